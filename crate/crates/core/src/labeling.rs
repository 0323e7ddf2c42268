use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A bijection from element ids `0..n` to labels `1..=n`.
///
/// Serializes as the plain array `labels`, indexed by element id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Labeling {
    labels: Vec<usize>,
}

impl Labeling {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        let mut seen = vec![false; n + 1];
        for &v in &labels {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Labeling { labels })
    }

    /// Caller guarantees `labels` is a permutation of `1..=n`.
    pub(crate) fn from_vec_unchecked(labels: Vec<usize>) -> Self {
        debug_assert!(Labeling::new(labels.clone()).is_ok());
        Labeling { labels }
    }

    pub fn identity(n: usize) -> Self {
        Labeling {
            labels: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// `L(x)`.
    #[inline]
    pub fn label(&self, x: usize) -> usize {
        self.labels[x]
    }

    /// `L^{-1}(label)`.
    pub fn element_with_label(&self, label: usize) -> usize {
        self.labels
            .iter()
            .position(|&v| v == label)
            .expect("label in 1..=n")
    }

    /// `inverse[j - 1]` is the element carrying label `j`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.labels.len()];
        for (x, &v) in self.labels.iter().enumerate() {
            inv[v - 1] = x;
        }
        inv
    }

    /// Elements whose label lies in `lo..=hi`.
    pub fn elements_with_labels_in(&self, lo: usize, hi: usize) -> ElementSet {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &v)| lo <= v && v <= hi)
            .map(|(x, _)| x)
            .collect()
    }

    /// Standardized restriction to `s`, indexed by the increasing ids of `s`
    /// (the local ids used by `Poset::induced`).
    pub fn restrict(&self, s: ElementSet) -> Labeling {
        let values: Vec<i64> = s.iter().map(|x| self.labels[x] as i64).collect();
        standardize(&values).expect("labels are distinct")
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.labels
    }
}

impl TryFrom<Vec<usize>> for Labeling {
    type Error = Error;

    fn try_from(labels: Vec<usize>) -> Result<Self> {
        Labeling::new(labels)
    }
}

impl From<Labeling> for Vec<usize> {
    fn from(l: Labeling) -> Self {
        l.labels
    }
}

/// The unique labeling whose relative order matches `values`.
pub fn standardize(values: &[i64]) -> Result<Labeling> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| values[i]);
    if let Some(w) = order.windows(2).find(|w| values[w[0]] == values[w[1]]) {
        return Err(Error::NotInjective(values[w[0]]));
    }
    let mut labels = vec![0; values.len()];
    for (rank, &i) in order.iter().enumerate() {
        labels[i] = rank + 1;
    }
    Ok(Labeling { labels })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_permutations() {
        assert!(Labeling::new(vec![1, 1]).is_err());
        assert!(Labeling::new(vec![0, 1]).is_err());
        assert!(Labeling::new(vec![1, 3]).is_err());
        assert!(Labeling::new(vec![]).is_ok());
    }

    #[test]
    fn standardize_examples() {
        let st = |v: &[i64]| standardize(v).unwrap().into_vec();
        assert_eq!(st(&[5, 2, 9]), vec![2, 1, 3]);
        assert_eq!(st(&[1, 2, 3]), vec![1, 2, 3]);
        assert_eq!(st(&[-4, 10, 0, 7]), vec![1, 4, 2, 3]);
        assert_eq!(standardize(&[3, 1, 3]), Err(Error::NotInjective(3)));
    }

    #[test]
    fn standardize_matches_rank_count() {
        let values = [17i64, -3, 40, 8, 0, -12];
        let got = standardize(&values).unwrap();
        for (i, &v) in values.iter().enumerate() {
            let rank = values.iter().filter(|&&w| w <= v).count();
            assert_eq!(got.label(i), rank);
        }
    }

    #[test]
    fn inverse_and_restrict() {
        let l = Labeling::new(vec![3, 1, 4, 2]).unwrap();
        assert_eq!(l.inverse(), vec![1, 3, 0, 2]);
        assert_eq!(l.element_with_label(4), 2);
        let s: ElementSet = [0, 2, 3].into_iter().collect();
        assert_eq!(l.restrict(s).into_vec(), vec![2, 3, 1]);
        assert_eq!(l.elements_with_labels_in(3, 4).to_vec(), vec![0, 2]);
    }

    #[test]
    fn serde_as_array() {
        let l: Labeling = serde_json::from_str("[2,1,3]").unwrap();
        assert_eq!(l.labels(), &[2, 1, 3]);
        assert_eq!(serde_json::to_string(&l).unwrap(), "[2,1,3]");
        assert!(serde_json::from_str::<Labeling>("[2,2,3]").is_err());
    }
}
