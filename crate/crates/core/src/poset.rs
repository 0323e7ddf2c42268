//! Finite posets on dense element ids `0..n`.
//!
//! A [`Poset`] is built from cover pairs (or any strict relation), closed
//! transitively and canonicalized to its Hasse diagram. The strict up- and
//! down-sets of every element are cached as bitmasks, so comparability tests
//! are O(1) and ideal tests are a handful of word operations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::labeling::Labeling;
use crate::scalar::{self, CountScalar};
use crate::set::{ElementSet, MAX_ELEMENTS};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PosetRepr", into = "PosetRepr")]
pub struct Poset {
    n: usize,
    covers: Vec<(usize, usize)>,
    above: Vec<ElementSet>,
    below: Vec<ElementSet>,
    upper_covers: Vec<ElementSet>,
    lower_covers: Vec<ElementSet>,
    /// Element ids sorted by number of strict lower bounds; a linear extension order.
    topo: Vec<usize>,
}

/// Wire form of a poset: `{"n":4,"covers":[[0,1],[0,2],[1,3],[2,3]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetRepr {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
}

impl TryFrom<PosetRepr> for Poset {
    type Error = Error;

    fn try_from(repr: PosetRepr) -> Result<Self> {
        let covers: Vec<(usize, usize)> = repr.covers.iter().map(|&[u, v]| (u, v)).collect();
        Poset::new(repr.n, &covers)
    }
}

impl From<Poset> for PosetRepr {
    fn from(p: Poset) -> Self {
        PosetRepr {
            n: p.n,
            covers: p.covers.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

/// A lower order ideal together with whether it is an antichain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderIdeal {
    pub elements: ElementSet,
    pub is_antichain: bool,
}

/// A connected component, as an induced subposet plus the ids it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub poset: Poset,
    /// `elements[i]` is the id in the parent poset of local element `i`.
    pub elements: Vec<usize>,
}

impl Poset {
    /// Builds a poset from pairs `(u, v)` meaning `u < v`.
    ///
    /// Transitively implied pairs are accepted and dropped from the stored
    /// covers; cycles (including self-loops) are rejected.
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements {
                n,
                max: MAX_ELEMENTS,
            });
        }
        let mut succ = vec![ElementSet::EMPTY; n];
        for &(u, v) in relations {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::ElementOutOfRange { id, n });
                }
            }
            succ[u].insert(v);
        }
        let mut above = vec![ElementSet::EMPTY; n];
        for x in 0..n {
            let mut seen = ElementSet::EMPTY;
            let mut stack: Vec<usize> = succ[x].to_vec();
            while let Some(y) = stack.pop() {
                if seen.contains(y) {
                    continue;
                }
                seen.insert(y);
                stack.extend(succ[y].difference(seen));
            }
            if seen.contains(x) {
                return Err(Error::Cycle(x));
            }
            above[x] = seen;
        }
        Ok(Self::from_closure(above))
    }

    /// Builds a poset from a strict order predicate; the predicate is closed
    /// transitively, so it only has to generate the order.
    pub fn from_strict_order(n: usize, less: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if less(u, v) {
                    pairs.push((u, v));
                }
            }
        }
        Self::new(n, &pairs)
    }

    fn from_closure(above: Vec<ElementSet>) -> Self {
        let n = above.len();
        let mut below = vec![ElementSet::EMPTY; n];
        for (x, up) in above.iter().enumerate() {
            for y in up.iter() {
                below[y].insert(x);
            }
        }
        let mut covers = Vec::new();
        let mut upper_covers = vec![ElementSet::EMPTY; n];
        let mut lower_covers = vec![ElementSet::EMPTY; n];
        for u in 0..n {
            for v in above[u].iter() {
                if above[u].intersection(below[v]).is_empty() {
                    covers.push((u, v));
                    upper_covers[u].insert(v);
                    lower_covers[v].insert(u);
                }
            }
        }
        let mut topo: Vec<usize> = (0..n).collect();
        topo.sort_by_key(|&x| (below[x].len(), x));
        Poset {
            n,
            covers,
            above,
            below,
            upper_covers,
            lower_covers,
            topo,
        }
    }

    pub fn chain(n: usize) -> Result<Self> {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &covers)
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::new(n, &[])
    }

    /// Product of chains with the given lengths, ordered componentwise.
    /// Element ids enumerate coordinates in row-major order.
    pub fn product_of_chains(dims: &[usize]) -> Result<Self> {
        let n: usize = dims.iter().product();
        if dims.is_empty() || n > MAX_ELEMENTS {
            return Err(Error::Domain(format!(
                "product of chains {dims:?} must be nonempty with at most {MAX_ELEMENTS} elements"
            )));
        }
        let coords = |mut id: usize| {
            let mut c = vec![0; dims.len()];
            for (slot, &d) in c.iter_mut().zip(dims).rev() {
                *slot = id % d;
                id /= d;
            }
            c
        };
        let points: Vec<Vec<usize>> = (0..n).map(coords).collect();
        Self::from_strict_order(n, |u, v| {
            u != v && points[u].iter().zip(&points[v]).all(|(a, b)| a <= b)
        })
    }

    /// Disjoint union; ids of later posets are shifted past earlier ones.
    pub fn disjoint_union(parts: &[Poset]) -> Result<Self> {
        let mut covers = Vec::new();
        let mut offset = 0;
        for p in parts {
            covers.extend(p.covers.iter().map(|&(u, v)| (u + offset, v + offset)));
            offset += p.n;
        }
        Self::new(offset, &covers)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// Hasse diagram edges `(u, v)` with `v` covering `u`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { id: x, n: self.n })
        }
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        x == y || self.lt(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.lt(y, x)
    }

    /// Strict upper bounds of `x`.
    #[inline]
    pub fn above(&self, x: usize) -> ElementSet {
        self.above[x]
    }

    /// Strict lower bounds of `x`.
    #[inline]
    pub fn below(&self, x: usize) -> ElementSet {
        self.below[x]
    }

    pub fn upper_covers(&self, x: usize) -> ElementSet {
        self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> ElementSet {
        self.lower_covers[x]
    }

    /// Element ids in an order compatible with the poset.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        self.above[x].is_empty()
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.below[x].is_empty()
    }

    pub fn maximal_elements(&self) -> ElementSet {
        (0..self.n).filter(|&x| self.is_maximal(x)).collect()
    }

    pub fn minimal_elements(&self) -> ElementSet {
        (0..self.n).filter(|&x| self.is_minimal(x)).collect()
    }

    pub fn is_linear_extension(&self, l: &Labeling) -> Result<bool> {
        self.check_labeling(l)?;
        Ok(self.is_sorted(l.labels()))
    }

    /// Linear extension test on a raw label array of the right length.
    #[inline]
    pub(crate) fn is_sorted(&self, labels: &[usize]) -> bool {
        self.covers.iter().all(|&(u, v)| labels[u] < labels[v])
    }

    pub(crate) fn check_labeling(&self, l: &Labeling) -> Result<()> {
        if l.len() == self.n {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.n,
                actual: l.len(),
            })
        }
    }

    fn to_set(&self, ids: &[usize]) -> Result<ElementSet> {
        ids.iter()
            .map(|&x| self.check_element(x).map(|_| x))
            .collect()
    }

    pub fn is_lower_order_ideal(&self, ids: &[usize]) -> Result<bool> {
        Ok(self.is_lower_set(self.to_set(ids)?))
    }

    pub fn is_upper_order_ideal(&self, ids: &[usize]) -> Result<bool> {
        Ok(self.is_upper_set(self.to_set(ids)?))
    }

    #[inline]
    pub fn is_lower_set(&self, s: ElementSet) -> bool {
        s.iter().all(|x| self.below[x].is_subset(s))
    }

    #[inline]
    pub fn is_upper_set(&self, s: ElementSet) -> bool {
        s.iter().all(|x| self.above[x].is_subset(s))
    }

    pub fn is_antichain(&self, s: ElementSet) -> bool {
        s.iter().all(|x| self.above[x].intersection(s).is_empty())
    }

    /// All lower order ideals with exactly `k` elements, sorted
    /// lexicographically by their sorted element ids.
    pub fn lower_ideals_of_size(&self, k: usize) -> Result<Vec<OrderIdeal>> {
        if k > self.n {
            return Err(Error::KOutOfRange { k, max: self.n });
        }
        let mut found = Vec::new();
        self.collect_ideals(0, ElementSet::EMPTY, k, &mut found);
        let mut ideals: Vec<OrderIdeal> = found
            .into_iter()
            .map(|elements| OrderIdeal {
                elements,
                is_antichain: self.is_antichain(elements),
            })
            .collect();
        ideals.sort_by_key(|ideal| ideal.elements.to_vec());
        Ok(ideals)
    }

    fn collect_ideals(&self, idx: usize, current: ElementSet, k: usize, out: &mut Vec<ElementSet>) {
        if current.len() == k {
            out.push(current);
            return;
        }
        if current.len() + (self.n - idx) < k {
            return;
        }
        let x = self.topo[idx];
        if self.below[x].is_subset(current) {
            self.collect_ideals(idx + 1, current.with(x), k, out);
        }
        self.collect_ideals(idx + 1, current, k, out);
    }

    /// Connected components of the Hasse diagram, ordered by smallest id.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut seen = ElementSet::EMPTY;
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = ElementSet::singleton(start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let next = self.upper_covers[x]
                    .union(self.lower_covers[x])
                    .difference(comp);
                comp = comp.union(next);
                stack.extend(next.iter());
            }
            seen = seen.union(comp);
            let (poset, elements) = self.induced(comp);
            components.push(Component { poset, elements });
        }
        components
    }

    /// Subposet induced on `s`, with local ids in increasing global order.
    pub fn induced(&self, s: ElementSet) -> (Poset, Vec<usize>) {
        let elements = s.to_vec();
        let local_of = |g: usize| elements.iter().position(|&e| e == g);
        let above: Vec<ElementSet> = elements
            .iter()
            .map(|&g| {
                self.above[g]
                    .intersection(s)
                    .iter()
                    .filter_map(local_of)
                    .collect()
            })
            .collect();
        (Self::from_closure(above), elements)
    }

    /// The poset with `x` removed, plus the surviving global ids.
    pub fn delete(&self, x: usize) -> Result<(Poset, Vec<usize>)> {
        self.check_element(x)?;
        Ok(self.induced(self.elements().without(x)))
    }

    /// Number of chains inside `allowed`, the empty chain included.
    pub fn count_chains_within<C: CountScalar>(&self, allowed: ElementSet) -> Result<C> {
        let mut ending_at: Vec<Option<C>> = vec![None; self.n];
        let mut total = C::one();
        for &y in &self.topo {
            if !allowed.contains(y) {
                continue;
            }
            let mut f = C::one();
            for z in self.below[y].intersection(allowed).iter() {
                let below = ending_at[z].as_ref().expect("topological order");
                f = scalar::checked_add(&f, below)?;
            }
            total = scalar::checked_add(&total, &f)?;
            ending_at[y] = Some(f);
        }
        Ok(total)
    }

    /// Number of nonempty chains containing `x`; singletons count.
    pub fn chains_through<C: CountScalar>(&self, x: usize) -> Result<C> {
        self.check_element(x)?;
        self.chains_through_within(x, self.elements())
    }

    /// Chains through `x` using only elements of `allowed` (plus `x`).
    pub fn chains_through_within<C: CountScalar>(
        &self,
        x: usize,
        allowed: ElementSet,
    ) -> Result<C> {
        let down: C = self.count_chains_within(self.below[x].intersection(allowed))?;
        let up: C = self.count_chains_within(self.above[x].intersection(allowed))?;
        scalar::checked_mul(&down, &up)
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.covers)
            .finish()
    }
}
