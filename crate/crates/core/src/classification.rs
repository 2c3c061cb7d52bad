//! Distance matrices and UPGMA clustering.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::comparison::PairwiseComparison;
use crate::error::{Error, Result};
use crate::wordlist::VarietyId;

const SYMMETRY_TOLERANCE: f64 = 1e-12;
/// Merge distances closer than this are ties, resolved by label order.
const TIE_TOLERANCE: f64 = 1e-12;

/// Symmetric matrix of pairwise distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    labels: Vec<VarietyId>,
    cells: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    pub fn new(labels: Vec<VarietyId>, cells: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("no labels".into()));
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::InvalidMatrix(format!("duplicate label {label}")));
            }
        }
        if cells.len() != n || cells.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMatrix(format!("expected a {n}x{n} matrix")));
        }
        for i in 0..n {
            if cells[i][i] != 0.0 {
                return Err(Error::InvalidMatrix(format!("non-zero diagonal for {}", labels[i])));
            }
            for j in 0..n {
                let d = cells[i][j];
                if !(0.0..=1.0).contains(&d) {
                    return Err(Error::InvalidMatrix(format!(
                        "distance {d} between {} and {} is outside [0, 1]",
                        labels[i], labels[j]
                    )));
                }
                if (d - cells[j][i]).abs() > SYMMETRY_TOLERANCE {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric distances between {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(DistanceMatrix { labels, cells })
    }

    /// Builds a matrix from unordered `(a, b, distance)` triples. Labels are
    /// taken in order of first appearance; every pair must occur once.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S, f64)]) -> Result<Self> {
        let mut labels: Vec<VarietyId> = Vec::new();
        for (a, b, _) in pairs {
            for name in [a.as_ref(), b.as_ref()] {
                let id = VarietyId::new(name)?;
                if !labels.contains(&id) {
                    labels.push(id);
                }
            }
        }
        Self::from_labeled_pairs(labels, pairs)
    }

    /// Like [`DistanceMatrix::from_pairs`] over an explicit label set.
    pub fn from_labeled_pairs<S: AsRef<str>>(labels: Vec<VarietyId>, pairs: &[(S, S, f64)]) -> Result<Self> {
        let n = labels.len();
        let index = |name: &str| {
            labels
                .iter()
                .position(|l| l.as_str() == name)
                .ok_or_else(|| Error::InvalidMatrix(format!("unknown label {name}")))
        };
        let mut cells: Vec<Vec<Option<f64>>> = vec![vec![None; n]; n];
        for (a, b, d) in pairs {
            let (i, j) = (index(a.as_ref())?, index(b.as_ref())?);
            if i == j {
                return Err(Error::InvalidMatrix(format!("self pair {}", a.as_ref())));
            }
            if cells[i][j].is_some() {
                return Err(Error::DuplicatePair(labels[i.min(j)].to_string(), labels[i.max(j)].to_string()));
            }
            cells[i][j] = Some(*d);
            cells[j][i] = Some(*d);
        }
        let mut out = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = cells[i][j].ok_or_else(|| Error::MissingPair(labels[i].to_string(), labels[j].to_string()))?;
                out[i][j] = d;
                out[j][i] = d;
            }
        }
        DistanceMatrix::new(labels, out)
    }

    /// Parses CSV with a header row of labels (first cell ignored) followed
    /// by one labeled row per variety.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidMatrix(msg);
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
        let labels = header
            .iter()
            .skip(1)
            .map(VarietyId::new)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| bad(e.to_string()))?;

        let mut cells = Vec::with_capacity(labels.len());
        for (row_idx, record) in reader.records().enumerate() {
            let record = record.map_err(|e| bad(e.to_string()))?;
            let expected = labels.get(row_idx).ok_or_else(|| bad("more rows than labels".into()))?;
            if record.get(0) != Some(expected.as_str()) {
                return Err(bad(format!("row {} should be labeled {expected}", row_idx + 1)));
            }
            let row = record
                .iter()
                .skip(1)
                .map(|c| c.parse::<f64>().map_err(|_| bad(format!("invalid distance {c:?}"))))
                .collect::<Result<Vec<_>>>()?;
            cells.push(row);
        }
        DistanceMatrix::new(labels, cells)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        DistanceMatrix::from_csv_str(&text)
    }

    pub fn to_csv(&self, digits: Option<usize>) -> String {
        let fmt = |d: f64| match digits {
            Some(p) => format!("{d:.p$}"),
            None => d.to_string(),
        };
        let mut out = String::new();
        for l in &self.labels {
            let _ = write!(out, ",{l}");
        }
        out.push('\n');
        for (label, row) in self.labels.iter().zip(&self.cells) {
            out.push_str(label.as_str());
            for d in row {
                let _ = write!(out, ",{}", fmt(*d));
            }
            out.push('\n');
        }
        out
    }

    pub fn labels(&self) -> &[VarietyId] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i][j]
    }

    pub fn distance(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.labels.iter().position(|l| l.as_str() == a)?;
        let j = self.labels.iter().position(|l| l.as_str() == b)?;
        Some(self.cells[i][j])
    }

    /// Copy with rows and columns reordered so that label `order[k]` comes k-th.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        let cells = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.cells[i][j]).collect())
            .collect();
        DistanceMatrix::new(labels, cells)
    }
}

/// Assembles the average distances of a complete set of pair comparisons.
pub fn build_matrix(comparisons: &[PairwiseComparison]) -> Result<DistanceMatrix> {
    let pairs: Vec<(&str, &str, f64)> = comparisons
        .iter()
        .map(|c| (c.pair.0.as_str(), c.pair.1.as_str(), c.avg_distance))
        .collect();
    if pairs.is_empty() {
        return Err(Error::InvalidMatrix("no comparisons".into()));
    }
    DistanceMatrix::from_pairs(&pairs)
}

/// Rooted binary tree whose internal nodes carry merge heights.
#[derive(Debug, Clone, PartialEq)]
pub enum ClusterTree {
    Leaf(VarietyId),
    Merge {
        height: f64,
        left: Box<ClusterTree>,
        right: Box<ClusterTree>,
    },
}

impl ClusterTree {
    pub fn height(&self) -> f64 {
        match self {
            ClusterTree::Leaf(_) => 0.0,
            ClusterTree::Merge { height, .. } => *height,
        }
    }

    pub fn leaves(&self) -> Vec<&VarietyId> {
        match self {
            ClusterTree::Leaf(l) => vec![l],
            ClusterTree::Merge { left, right, .. } => {
                let mut out = left.leaves();
                out.extend(right.leaves());
                out
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            ClusterTree::Leaf(_) => 1,
            ClusterTree::Merge { left, right, .. } => left.leaf_count() + right.leaf_count(),
        }
    }

    /// Heights of all internal nodes in ascending order, i.e. merge order.
    pub fn merge_heights(&self) -> Vec<f64> {
        fn collect(t: &ClusterTree, out: &mut Vec<f64>) {
            if let ClusterTree::Merge { height, left, right } = t {
                out.push(*height);
                collect(left, out);
                collect(right, out);
            }
        }
        let mut out = Vec::new();
        collect(self, &mut out);
        out.sort_by(f64::total_cmp);
        out
    }

    /// Leaf sets of every internal node, each sorted. Two trees over the same
    /// labels have the same topology exactly when these sets agree.
    pub fn clades(&self) -> Vec<Vec<String>> {
        fn collect(t: &ClusterTree, out: &mut Vec<Vec<String>>) {
            if let ClusterTree::Merge { left, right, .. } = t {
                let mut leaves: Vec<String> = t.leaves().iter().map(|l| l.to_string()).collect();
                leaves.sort();
                out.push(leaves);
                collect(left, out);
                collect(right, out);
            }
        }
        let mut out = Vec::new();
        collect(self, &mut out);
        out.sort();
        out
    }

}

struct Cluster {
    tree: ClusterTree,
    size: usize,
    key: String,
}

/// Unweighted pair-group clustering with arithmetic means.
///
/// At each step the two clusters with the smallest average distance are
/// merged at half that distance. Ties go to the lexicographically smallest
/// pair of cluster keys, a cluster's key being its smallest leaf label.
/// Within a merge the smaller child (then the one with the smaller key) is
/// placed on the left.
pub fn upgma(matrix: &DistanceMatrix) -> ClusterTree {
    let n = matrix.len();
    let mut dist: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| matrix.get(i, j)).collect()).collect();
    let mut clusters: Vec<Option<Cluster>> = matrix
        .labels()
        .iter()
        .map(|l| {
            Some(Cluster {
                tree: ClusterTree::Leaf(l.clone()),
                size: 1,
                key: l.to_string(),
            })
        })
        .collect();

    for _ in 1..n {
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..n {
            let Some(ci) = &clusters[i] else { continue };
            for j in i + 1..n {
                let Some(cj) = &clusters[j] else { continue };
                let d = dist[i][j];
                let better = match best {
                    None => true,
                    Some((bi, bj, bd)) => {
                        if d < bd - TIE_TOLERANCE {
                            true
                        } else if d <= bd + TIE_TOLERANCE {
                            let key = ordered_keys(&ci.key, &cj.key);
                            let best_key = ordered_keys(
                                &clusters[bi].as_ref().unwrap().key,
                                &clusters[bj].as_ref().unwrap().key,
                            );
                            key < best_key
                        } else {
                            false
                        }
                    }
                };
                if better {
                    best = Some((i, j, d));
                }
            }
        }
        let (i, j, d) = best.expect("at least two active clusters");
        let a = clusters[i].take().unwrap();
        let b = clusters[j].take().unwrap();

        for k in 0..n {
            if clusters[k].is_some() {
                let merged = (a.size as f64 * dist[i][k] + b.size as f64 * dist[j][k]) / (a.size + b.size) as f64;
                dist[i][k] = merged;
                dist[k][i] = merged;
            }
        }

        let height = (d / 2.0).max(a.tree.height()).max(b.tree.height());
        let (left, right) = if (b.size, b.key.as_str()) < (a.size, a.key.as_str()) { (b, a) } else { (a, b) };
        let key = left.key.clone().min(right.key.clone());
        clusters[i] = Some(Cluster {
            size: left.size + right.size,
            tree: ClusterTree::Merge {
                height,
                left: Box::new(left.tree),
                right: Box::new(right.tree),
            },
            key,
        });
    }

    clusters
        .into_iter()
        .flatten()
        .next()
        .expect("one cluster remains")
        .tree
}

fn ordered_keys<'a>(a: &'a str, b: &'a str) -> (&'a str, &'a str) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn format_length(x: f64) -> String {
    let s = format!("{:.10}", x.max(0.0));
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn newick_label(label: &str) -> String {
    if label.chars().any(|c| "()[]':;,".contains(c)) {
        format!("'{}'", label.replace('\'', "''"))
    } else {
        label.to_string()
    }
}

/// Newick text with branch lengths (parent height minus child height).
pub fn to_newick(tree: &ClusterTree) -> String {
    fn write_node(t: &ClusterTree, out: &mut String) {
        match t {
            ClusterTree::Leaf(l) => out.push_str(&newick_label(l.as_str())),
            ClusterTree::Merge { height, left, right } => {
                out.push('(');
                for (k, child) in [left, right].into_iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    write_node(child, out);
                    out.push(':');
                    out.push_str(&format_length(height - child.height()));
                }
                out.push(')');
            }
        }
    }
    let mut out = String::new();
    write_node(tree, &mut out);
    out.push(';');
    out
}
