//! Inflated rooted forests and their closed-form tangled counts.
//!
//! An inflated tree replaces every vertex `v` of a rooted tree `Q` by a fiber
//! of `fibers[v]` elements with a unique minimal element (a chain unless an
//! explicit shape is given). Elements of different fibers compare exactly as
//! their vertices do in `Q`, where the root is the maximum.
//!
//! File format: `{"trees":[{"parents":[-1,0,0,1,1],"fibers":[1,1,2,1,1]}]}`,
//! with an optional per-tree `"shapes"` array of posets (or `null` for a
//! chain).

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::scalar::{self, CountScalar};

/// A rooted tree on vertices `0..len`; the root is the only vertex without
/// a parent and is the maximum of the tree poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    parents: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl RootedTree {
    pub fn new(parents: Vec<Option<usize>>) -> Result<Self> {
        let n = parents.len();
        let roots: Vec<usize> = (0..n).filter(|&v| parents[v].is_none()).collect();
        let [root] = roots[..] else {
            return Err(Error::InvalidTree(format!(
                "expected exactly one root, found {}",
                roots.len()
            )));
        };
        let mut children = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::InvalidTree(format!(
                        "parent {p} of {v} out of range"
                    )));
                }
                children[p].push(v);
            }
        }
        for start in 0..n {
            let mut v = start;
            for _ in 0..n {
                match parents[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
            if v != root {
                return Err(Error::InvalidTree(format!(
                    "vertex {start} does not reach the root"
                )));
            }
        }
        Ok(RootedTree {
            parents,
            children,
            root,
        })
    }

    /// Parent array with `-1` marking the root.
    pub fn from_signed(parents: &[i64]) -> Result<Self> {
        let parents = parents
            .iter()
            .map(|&p| match p {
                -1 => Ok(None),
                p if p >= 0 => Ok(Some(p as usize)),
                p => Err(Error::InvalidTree(format!("bad parent {p}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parents)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.parents
            .iter()
            .map(|p| p.map_or(-1, |p| p as i64))
            .collect()
    }

    /// A root with `leaves` children.
    pub fn star(leaves: usize) -> Self {
        let parents = std::iter::once(None)
            .chain(std::iter::repeat(Some(0)).take(leaves))
            .collect();
        Self::new(parents).expect("star is a tree")
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parents[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.children[v].is_empty())
            .collect()
    }

    /// `u <_Q v`: `v` is a proper ancestor of `u`.
    pub fn below(&self, u: usize, v: usize) -> bool {
        let mut w = u;
        while let Some(p) = self.parents[w] {
            if p == v {
                return true;
            }
            w = p;
        }
        false
    }

    /// Vertices from `v` up to the root, inclusive.
    pub fn path_to_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut w = v;
        while let Some(p) = self.parents[w] {
            path.push(p);
            w = p;
        }
        path
    }

    /// No vertex has exactly one child.
    pub fn is_reduced(&self) -> bool {
        self.first_unary().is_none()
    }

    fn first_unary(&self) -> Option<usize> {
        (0..self.len()).find(|&v| self.children[v].len() == 1)
    }

    /// Vertices with every child listed before its parent.
    fn bottom_up(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(&self.children[v]);
        }
        order.reverse();
        order
    }

    /// The tree as a poset on its vertex ids.
    pub fn to_poset(&self) -> Result<Poset> {
        let covers: Vec<_> = (0..self.len())
            .filter_map(|v| self.parents[v].map(|p| (v, p)))
            .collect();
        Poset::new(self.len(), &covers)
    }
}

/// One inflated tree: the tree, fiber sizes and optional fiber shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeSpecRepr", into = "TreeSpecRepr")]
pub struct InflatedTreeSpec {
    tree: RootedTree,
    fibers: Vec<usize>,
    shapes: Vec<Option<Poset>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TreeSpecRepr {
    parents: Vec<i64>,
    fibers: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shapes: Option<Vec<Option<Poset>>>,
}

impl TryFrom<TreeSpecRepr> for InflatedTreeSpec {
    type Error = Error;

    fn try_from(r: TreeSpecRepr) -> Result<Self> {
        let tree = RootedTree::from_signed(&r.parents)?;
        match r.shapes {
            None => InflatedTreeSpec::new(tree, r.fibers),
            Some(shapes) => InflatedTreeSpec::with_shapes(tree, r.fibers, shapes),
        }
    }
}

impl From<InflatedTreeSpec> for TreeSpecRepr {
    fn from(s: InflatedTreeSpec) -> Self {
        let has_shapes = s.shapes.iter().any(Option::is_some);
        TreeSpecRepr {
            parents: s.tree.to_signed(),
            fibers: s.fibers,
            shapes: has_shapes.then_some(s.shapes),
        }
    }
}

impl InflatedTreeSpec {
    /// Chain fibers of the given sizes.
    pub fn new(tree: RootedTree, fibers: Vec<usize>) -> Result<Self> {
        let shapes = vec![None; fibers.len()];
        Self::with_shapes(tree, fibers, shapes)
    }

    pub fn with_shapes(
        tree: RootedTree,
        fibers: Vec<usize>,
        shapes: Vec<Option<Poset>>,
    ) -> Result<Self> {
        if fibers.len() != tree.len() || shapes.len() != tree.len() {
            return Err(Error::Dimension {
                expected: tree.len(),
                actual: if fibers.len() != tree.len() {
                    fibers.len()
                } else {
                    shapes.len()
                },
            });
        }
        for (v, (&size, shape)) in fibers.iter().zip(&shapes).enumerate() {
            if size == 0 {
                return Err(Error::InvalidInflation(format!(
                    "fiber of vertex {v} is empty"
                )));
            }
            if let Some(shape) = shape {
                if shape.len() != size {
                    return Err(Error::InvalidInflation(format!(
                        "shape of vertex {v} has {} elements, fiber size is {size}",
                        shape.len()
                    )));
                }
                if shape.minimal_elements().len() != 1 {
                    return Err(Error::InvalidInflation(format!(
                        "shape of vertex {v} needs a unique minimal element"
                    )));
                }
            }
        }
        Ok(InflatedTreeSpec {
            tree,
            fibers,
            shapes,
        })
    }

    /// A single vertex whose fiber is a chain of `n` elements.
    pub fn point(n: usize) -> Result<Self> {
        Self::new(RootedTree::new(vec![None])?, vec![n])
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn fibers(&self) -> &[usize] {
        &self.fibers
    }

    pub fn shapes(&self) -> &[Option<Poset>] {
        &self.shapes
    }

    /// Total number of elements of the inflated poset.
    pub fn size(&self) -> usize {
        self.fibers.iter().sum()
    }

    fn shape(&self, v: usize) -> Result<Poset> {
        match &self.shapes[v] {
            Some(s) => Ok(s.clone()),
            None => Poset::chain(self.fibers[v]),
        }
    }

    fn subtree_sums(&self) -> Vec<usize> {
        let mut sums = self.fibers.clone();
        for v in self.tree.bottom_up() {
            if let Some(p) = self.tree.parent(v) {
                sums[p] += sums[v];
            }
        }
        sums
    }
}

/// A list of inflated trees; the realized poset is their disjoint union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflatedForestSpec {
    pub trees: Vec<InflatedTreeSpec>,
}

impl InflatedForestSpec {
    pub fn size(&self) -> usize {
        self.trees.iter().map(InflatedTreeSpec::size).sum()
    }

    pub fn reduce(&self) -> Result<InflatedForestSpec> {
        Ok(InflatedForestSpec {
            trees: self
                .trees
                .iter()
                .map(|t| reduce(t).map(|r| r.spec))
                .collect::<Result<_>>()?,
        })
    }
}

/// Output of [`reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub spec: InflatedTreeSpec,
    /// For each original vertex: the surviving vertex its fiber moved into and
    /// the offset of its elements inside the merged fiber.
    pub origin: Vec<(usize, usize)>,
}

/// Contracts every vertex with exactly one child into that child.
///
/// The contracted fiber is stacked on top of the child's fiber, so the
/// realized poset is unchanged up to relabeling of elements.
pub fn reduce(spec: &InflatedTreeSpec) -> Result<Reduction> {
    let tree = &spec.tree;
    let n = tree.len();
    let survives: Vec<bool> = (0..n).map(|v| tree.children(v).len() != 1).collect();
    let new_id: Vec<Option<usize>> = {
        let mut next = 0;
        (0..n)
            .map(|v| {
                survives[v].then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };

    let mut origin = vec![(0, 0); n];
    let mut parents = Vec::new();
    let mut fibers = Vec::new();
    let mut shapes = Vec::new();
    for s in (0..n).filter(|&v| survives[v]) {
        // s, then ancestors while they have exactly one child.
        let mut group = vec![s];
        let mut top = s;
        while let Some(p) = tree.parent(top) {
            if survives[p] {
                break;
            }
            group.push(p);
            top = p;
        }
        let mut offset = 0;
        for &v in &group {
            origin[v] = (new_id[s].unwrap(), offset);
            offset += spec.fibers[v];
        }
        parents.push(
            tree.parent(top)
                .map(|p| new_id[p].expect("branching vertex survives")),
        );
        fibers.push(offset);
        shapes.push(if group.iter().all(|&v| spec.shapes[v].is_none()) {
            None
        } else {
            let blocks = group
                .iter()
                .map(|&v| spec.shape(v))
                .collect::<Result<Vec<_>>>()?;
            Some(ordinal_sum(&blocks)?)
        });
    }
    let reduced = InflatedTreeSpec::with_shapes(RootedTree::new(parents)?, fibers, shapes)?;
    Ok(Reduction {
        spec: reduced,
        origin,
    })
}

/// Stacks the posets bottom to top: every element of a block lies below
/// every element of the later blocks.
fn ordinal_sum(blocks: &[Poset]) -> Result<Poset> {
    let mut block_of = Vec::new();
    let mut local = Vec::new();
    for (b, p) in blocks.iter().enumerate() {
        for x in 0..p.len() {
            block_of.push(b);
            local.push(x);
        }
    }
    Poset::from_strict_order(block_of.len(), |u, v| {
        block_of[u] < block_of[v]
            || (block_of[u] == block_of[v] && blocks[block_of[u]].lt(local[u], local[v]))
    })
}

/// A realized inflation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub poset: Poset,
    /// `phi[x] = (tree, vertex)` for each element `x`.
    pub phi: Vec<(usize, usize)>,
    /// `fiber_elements[t][v]` lists the elements of the fiber of vertex `v` of
    /// tree `t`, in shape order (index 0 is the fiber's minimum for chains).
    pub fiber_elements: Vec<Vec<Vec<usize>>>,
}

/// Builds the inflated poset. Element ids run over trees, then vertices,
/// then positions within each fiber.
pub fn realize(spec: &InflatedForestSpec) -> Result<Realization> {
    let mut phi = Vec::new();
    let mut local = Vec::new();
    let mut fiber_elements = Vec::new();
    let mut shapes = Vec::new();
    for (t, tree_spec) in spec.trees.iter().enumerate() {
        let mut per_vertex = Vec::new();
        let mut tree_shapes = Vec::new();
        for v in 0..tree_spec.tree.len() {
            let mut ids = Vec::new();
            for i in 0..tree_spec.fibers[v] {
                ids.push(phi.len());
                phi.push((t, v));
                local.push(i);
            }
            per_vertex.push(ids);
            tree_shapes.push(tree_spec.shape(v)?);
        }
        fiber_elements.push(per_vertex);
        shapes.push(tree_shapes);
    }
    let poset = Poset::from_strict_order(phi.len(), |x, y| {
        let ((tx, vx), (ty, vy)) = (phi[x], phi[y]);
        tx == ty
            && if vx == vy {
                shapes[tx][vx].lt(local[x], local[y])
            } else {
                spec.trees[tx].tree.below(vx, vy)
            }
    })?;
    Ok(Realization {
        poset,
        phi,
        fiber_elements,
    })
}

pub fn realize_tree(spec: &InflatedTreeSpec) -> Result<Realization> {
    realize(&InflatedForestSpec {
        trees: vec![spec.clone()],
    })
}

/// Path data for one leaf: `path[0]` is the leaf, `path[ω]` the root, and for
/// `1 <= j <= ω`, `b[j-1]` is the size of the inflated subtree at `path[j-1]`
/// while `c[j-1]` is the number of elements strictly below `path[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeafPathCoefficients {
    pub leaf: usize,
    pub path: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

/// Coefficients for every leaf, in increasing leaf id. The tree must be reduced.
pub fn leaf_coefficients(spec: &InflatedTreeSpec) -> Result<Vec<LeafPathCoefficients>> {
    if let Some(v) = spec.tree.first_unary() {
        return Err(Error::NotReduced(v));
    }
    let sums = spec.subtree_sums();
    Ok(spec
        .tree
        .leaves()
        .into_iter()
        .map(|leaf| {
            let path = spec.tree.path_to_root(leaf);
            let b = path[..path.len() - 1].iter().map(|&u| sums[u]).collect();
            let c = path[1..]
                .iter()
                .map(|&u| sums[u] - spec.fibers[u])
                .collect();
            LeafPathCoefficients { leaf, path, b, c }
        })
        .collect())
}

/// Tangled labelings of an inflated tree with at least two elements:
/// `(n-1)! Σ_leaves Π_j (b_j - 1)/(c_j - 1)`. Non-reduced trees are reduced
/// first.
pub fn tangled_count_tree<C: CountScalar>(spec: &InflatedTreeSpec) -> Result<C> {
    let n = spec.size();
    if n < 2 {
        return Err(Error::Domain(format!(
            "the tangled-count formula needs at least 2 elements, got {n}"
        )));
    }
    let reduced = reduce(spec)?.spec;
    let mut sum = Ratio::<C>::from_integer(C::zero());
    for leaf in leaf_coefficients(&reduced)? {
        let mut term = Ratio::<C>::from_integer(C::one());
        for (&b, &c) in leaf.b.iter().zip(&leaf.c) {
            if c < 2 || b < 1 || b > c {
                return Err(Error::Domain(format!(
                    "coefficients b = {b}, c = {c} violate 1 <= b <= c, c >= 2"
                )));
            }
            term = term * Ratio::new(scalar::from_usize(b - 1)?, scalar::from_usize(c - 1)?);
        }
        sum = sum + term;
    }
    let total = sum * Ratio::from_integer(scalar::factorial::<C>(n - 1)?);
    scalar::into_integer(total)
}

/// `(n-2)! Σ_i t_i / (n_i - 2)!` from `(n_i, t_i)` per connected component.
/// Components with fewer than two elements contribute nothing.
pub fn tangled_count_from_components<C: CountScalar>(parts: &[(usize, C)]) -> Result<C> {
    let n: usize = parts.iter().map(|(ni, _)| ni).sum();
    if n < 2 {
        return Ok(C::zero());
    }
    let mut sum = Ratio::<C>::from_integer(C::zero());
    for (ni, ti) in parts {
        if *ni < 2 {
            if !ti.is_zero() {
                return Err(Error::Domain(format!(
                    "a {ni}-element component cannot have tangled labelings"
                )));
            }
            continue;
        }
        sum = sum + Ratio::new(ti.clone(), scalar::factorial(ni - 2)?);
    }
    scalar::into_integer(sum * Ratio::from_integer(scalar::factorial::<C>(n - 2)?))
}

/// Tangled labelings of an inflated forest, combining per-tree counts.
pub fn tangled_count_forest<C: CountScalar>(spec: &InflatedForestSpec) -> Result<C> {
    let parts = spec
        .trees
        .iter()
        .map(|t| {
            let ni = t.size();
            let ti = if ni < 2 {
                C::zero()
            } else {
                tangled_count_tree(t)?
            };
            Ok((ni, ti))
        })
        .collect::<Result<Vec<_>>>()?;
    tangled_count_from_components(&parts)
}

/// Inflated rooted star: `(n-1)! (μ - s)/(μ - 1)` where `μ` is the number of
/// elements outside the root fiber and `s` the number of leaves.
pub fn tangled_count_star<C: CountScalar>(root_fiber: usize, leaf_fibers: &[usize]) -> Result<C> {
    let s = leaf_fibers.len();
    if root_fiber == 0 || s == 0 || leaf_fibers.contains(&0) {
        return Err(Error::Domain(
            "a star needs a nonempty root fiber and at least one nonempty leaf fiber".into(),
        ));
    }
    let mu: usize = leaf_fibers.iter().sum();
    let n = mu + root_fiber;
    let fact = scalar::factorial::<C>(n - 1)?;
    if s == 1 {
        // a single leaf below the root: unique minimal element
        return Ok(fact);
    }
    let ratio = Ratio::new(scalar::from_usize(mu - s)?, scalar::from_usize(mu - 1)?);
    scalar::into_integer(ratio * Ratio::from_integer(fact))
}

/// `(n - r)(n - 2)!` for `n >= 2` elements in `r` components, each with a
/// unique minimal element.
pub fn tangled_count_unique_min<C: CountScalar>(n: usize, r: usize) -> Result<C> {
    if n < 2 {
        return Err(Error::Domain(format!("need n >= 2, got {n}")));
    }
    if r < 1 || r > n {
        return Err(Error::Domain(format!(
            "need 1 <= r <= n, got r = {r}, n = {n}"
        )));
    }
    scalar::checked_mul(&scalar::from_usize(n - r)?, &scalar::factorial(n - 2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(parents: &[i64]) -> RootedTree {
        RootedTree::from_signed(parents).unwrap()
    }

    fn spec(parents: &[i64], fibers: &[usize]) -> InflatedTreeSpec {
        InflatedTreeSpec::new(tree(parents), fibers.to_vec()).unwrap()
    }

    /// root -> {a, b}, b -> {c, d}; fiber of a is 2.
    fn branching() -> InflatedTreeSpec {
        spec(&[-1, 0, 0, 2, 2], &[1, 2, 1, 1, 1])
    }

    #[test]
    fn tree_validation() {
        assert!(RootedTree::from_signed(&[-1, -1]).is_err());
        assert!(RootedTree::from_signed(&[1, 0]).is_err());
        assert!(RootedTree::from_signed(&[-1, 5]).is_err());
        assert!(RootedTree::from_signed(&[-1, 2, 1]).is_err());
        let t = tree(&[-1, 0, 0, 1, 1]);
        assert_eq!(t.leaves(), vec![2, 3, 4]);
        assert_eq!(t.path_to_root(4), vec![4, 1, 0]);
        assert!(t.below(4, 0) && !t.below(0, 4) && !t.below(2, 1));
        assert!(t.is_reduced());
        assert!(!tree(&[-1, 0, 1]).is_reduced());
    }

    #[test]
    fn spec_validation() {
        assert!(InflatedTreeSpec::new(tree(&[-1]), vec![0]).is_err());
        assert!(InflatedTreeSpec::new(tree(&[-1, 0]), vec![1]).is_err());
        let two_minima = Poset::antichain(2).unwrap();
        assert!(
            InflatedTreeSpec::with_shapes(tree(&[-1]), vec![2], vec![Some(two_minima)]).is_err()
        );
        let wrong_size = Poset::chain(3).unwrap();
        assert!(
            InflatedTreeSpec::with_shapes(tree(&[-1]), vec![2], vec![Some(wrong_size)]).is_err()
        );
    }

    #[test]
    fn reduce_examples() {
        let path = spec(&[-1, 0, 1], &[1, 1, 1]);
        let r = reduce(&path).unwrap();
        assert_eq!(r.spec, InflatedTreeSpec::point(3).unwrap());
        assert_eq!(r.origin, vec![(0, 2), (0, 1), (0, 0)]);

        let star = spec(&[-1, 0, 0, 0], &[1, 2, 1, 3]);
        assert_eq!(reduce(&star).unwrap().spec, star);
        assert_eq!(reduce(&branching()).unwrap().spec, branching());

        // root -> m -> {x, y}: m's only parent link is fine, root is unary.
        let unary_root = spec(&[-1, 0, 1, 1], &[2, 1, 1, 1]);
        let r = reduce(&unary_root).unwrap();
        assert_eq!(r.spec, spec(&[-1, 0, 0], &[3, 1, 1]));
        assert!(r.spec.tree().is_reduced());
    }

    #[test]
    fn realize_examples() {
        let r = realize_tree(&InflatedTreeSpec::point(4).unwrap()).unwrap();
        assert_eq!(r.poset, Poset::chain(4).unwrap());

        // star, root fiber 1 over leaf fibers (2, 1)
        let r = realize_tree(&spec(&[-1, 0, 0], &[1, 2, 1])).unwrap();
        // elements: 0 = root, 1 < 2 = leaf fiber, 3 = other leaf
        assert_eq!(r.poset.covers(), &[(1, 2), (2, 0), (3, 0)]);
        assert_eq!(r.fiber_elements[0], vec![vec![0], vec![1, 2], vec![3]]);
        assert_eq!(r.phi, vec![(0, 0), (0, 1), (0, 1), (0, 2)]);
    }

    #[test]
    fn realize_minima_follow_tree_order() {
        let s = branching();
        let r = realize_tree(&s).unwrap();
        let minima: Vec<usize> = r.fiber_elements[0].iter().map(|f| f[0]).collect();
        for u in 0..s.tree().len() {
            for v in 0..s.tree().len() {
                assert_eq!(r.poset.lt(minima[u], minima[v]), s.tree().below(u, v));
            }
        }
    }

    #[test]
    fn reduce_preserves_realized_poset() {
        let original = spec(&[-1, 0, 1, 1, 3], &[2, 1, 1, 2, 3]);
        let red = reduce(&original).unwrap();
        let a = realize_tree(&original).unwrap();
        let b = realize_tree(&red.spec).unwrap();
        let mut map = vec![0; a.poset.len()];
        for v in 0..original.tree().len() {
            let (w, off) = red.origin[v];
            for (i, &x) in a.fiber_elements[0][v].iter().enumerate() {
                map[x] = b.fiber_elements[0][w][off + i];
            }
        }
        for x in 0..a.poset.len() {
            for y in 0..a.poset.len() {
                assert_eq!(a.poset.lt(x, y), b.poset.lt(map[x], map[y]));
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        let star = spec(&[-1, 0, 0], &[1, 2, 1]);
        let co = leaf_coefficients(&star).unwrap();
        assert_eq!((co[0].b.clone(), co[0].c.clone()), (vec![2], vec![3]));
        assert_eq!((co[1].b.clone(), co[1].c.clone()), (vec![1], vec![3]));

        let co = leaf_coefficients(&InflatedTreeSpec::point(5).unwrap()).unwrap();
        assert_eq!(co.len(), 1);
        assert!(co[0].b.is_empty() && co[0].c.is_empty());

        let co = leaf_coefficients(&branching()).unwrap();
        let leaf_a = co.iter().find(|c| c.leaf == 1).unwrap();
        assert_eq!((leaf_a.b.clone(), leaf_a.c.clone()), (vec![2], vec![5]));
        let leaf_c = co.iter().find(|c| c.leaf == 3).unwrap();
        assert_eq!(leaf_c.path, vec![3, 2, 0]);
        assert_eq!(
            (leaf_c.b.clone(), leaf_c.c.clone()),
            (vec![1, 3], vec![2, 5])
        );

        assert_eq!(
            leaf_coefficients(&spec(&[-1, 0], &[1, 1])),
            Err(Error::NotReduced(0))
        );
    }

    #[test]
    fn tree_formula_examples() {
        for n in 2..10 {
            let t: u64 = tangled_count_tree(&InflatedTreeSpec::point(n).unwrap()).unwrap();
            assert_eq!(t, (1..n as u64).product::<u64>());
        }
        let star: u64 = tangled_count_tree(&spec(&[-1, 0, 0], &[1, 2, 1])).unwrap();
        assert_eq!(star, 3);
        let t: u64 = tangled_count_tree(&branching()).unwrap();
        assert_eq!(t, 30);
        assert!(tangled_count_tree::<u64>(&InflatedTreeSpec::point(1).unwrap()).is_err());
        // non-reduced input is normalized first
        let t: u64 = tangled_count_tree(&spec(&[-1, 0, 1], &[1, 1, 1])).unwrap();
        assert_eq!(t, 2);
    }

    #[test]
    fn forest_formula_examples() {
        let two_chains = InflatedForestSpec {
            trees: vec![InflatedTreeSpec::point(2).unwrap(); 2],
        };
        assert_eq!(tangled_count_forest::<u64>(&two_chains).unwrap(), 4);
        let chain_and_point = InflatedForestSpec {
            trees: vec![
                InflatedTreeSpec::point(2).unwrap(),
                InflatedTreeSpec::point(1).unwrap(),
            ],
        };
        assert_eq!(tangled_count_forest::<u64>(&chain_and_point).unwrap(), 1);
        let single = InflatedForestSpec {
            trees: vec![branching()],
        };
        assert_eq!(tangled_count_forest::<u64>(&single).unwrap(), 30);
        let lone_point = InflatedForestSpec {
            trees: vec![InflatedTreeSpec::point(1).unwrap()],
        };
        assert_eq!(tangled_count_forest::<u64>(&lone_point).unwrap(), 0);
    }

    #[test]
    fn star_and_unique_min_examples() {
        assert_eq!(tangled_count_star::<u64>(1, &[2, 1]).unwrap(), 3);
        assert_eq!(tangled_count_star::<u64>(2, &[3]).unwrap(), 24);
        assert!(tangled_count_star::<u64>(1, &[]).is_err());
        assert_eq!(tangled_count_unique_min::<u64>(3, 1).unwrap(), 2);
        assert_eq!(tangled_count_unique_min::<u64>(4, 1).unwrap(), 6);
        assert_eq!(tangled_count_unique_min::<u64>(5, 5).unwrap(), 0);
        assert!(tangled_count_unique_min::<u64>(1, 1).is_err());
        assert!(tangled_count_unique_min::<u64>(4, 0).is_err());
    }

    #[test]
    fn star_formula_matches_tree_formula() {
        for leaves in [
            vec![2, 1],
            vec![1, 1, 1],
            vec![3, 2],
            vec![2, 2, 4],
            vec![1, 5],
        ] {
            for root in 1..4 {
                let parents: Vec<i64> = std::iter::once(-1)
                    .chain(leaves.iter().map(|_| 0))
                    .collect();
                let fibers: Vec<usize> = std::iter::once(root).chain(leaves.clone()).collect();
                let via_tree: u64 = tangled_count_tree(&spec(&parents, &fibers)).unwrap();
                assert_eq!(tangled_count_star::<u64>(root, &leaves).unwrap(), via_tree);
            }
        }
    }

    #[test]
    fn spec_file_format() {
        let json = r#"{"trees":[{"parents":[-1,0,0,1,1],"fibers":[1,1,2,1,1]}]}"#;
        let forest: InflatedForestSpec = serde_json::from_str(json).unwrap();
        assert_eq!(forest.size(), 6);
        assert_eq!(serde_json::to_string(&forest).unwrap(), json);
        assert_eq!(tangled_count_forest::<u64>(&forest).unwrap(), 30);

        let shaped = r#"{"trees":[{"parents":[-1],"fibers":[3],"shapes":[{"n":3,"covers":[[0,1],[0,2]]}]}]}"#;
        let forest: InflatedForestSpec = serde_json::from_str(shaped).unwrap();
        assert_eq!(serde_json::to_string(&forest).unwrap(), shaped);
        let bad = r#"{"trees":[{"parents":[-1],"fibers":[2],"shapes":[{"n":2,"covers":[]}]}]}"#;
        assert!(serde_json::from_str::<InflatedForestSpec>(bad).is_err());
    }
}
