//! Rooted and planar trees indexing the tree-sum formulas for the gauge
//! action, their combinatorial coefficients, and evaluation of the bracket
//! words they encode.

use std::cmp::Ordering;
use std::fmt;

use crate::error::Result;
use crate::graded::GradedElement;
use crate::scalar::{factorial, Scalar};
use crate::structure::AlgebraSpec;

/// An unordered rooted tree. Each vertex carries one `x`-leaf, `xi_leaves`
/// ξ-leaves and a multiset of children; children are kept sorted, so equal
/// values are exactly isomorphic trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedTree {
    xi_leaves: usize,
    children: Vec<RootedTree>,
}

impl Ord for RootedTree {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.vertex_count(), self.xi_leaves, &self.children).cmp(&(
            other.vertex_count(),
            other.xi_leaves,
            &other.children,
        ))
    }
}

impl PartialOrd for RootedTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl RootedTree {
    /// Builds a tree, canonicalising the order of the children.
    pub fn new(xi_leaves: usize, mut children: Vec<RootedTree>) -> Self {
        children.sort();
        RootedTree {
            xi_leaves,
            children,
        }
    }

    pub fn leaf_vertex(xi_leaves: usize) -> Self {
        RootedTree::new(xi_leaves, Vec::new())
    }

    pub fn xi_leaves(&self) -> usize {
        self.xi_leaves
    }

    pub fn children(&self) -> &[RootedTree] {
        &self.children
    }

    /// Inputs of the root vertex: children, ξ-leaves and the `x`-leaf.
    pub fn arity(&self) -> usize {
        self.children.len() + self.xi_leaves + 1
    }

    pub fn vertex_count(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(RootedTree::vertex_count)
            .sum::<usize>()
    }

    pub fn max_arity(&self) -> usize {
        self.children
            .iter()
            .map(RootedTree::max_arity)
            .fold(self.arity(), usize::max)
    }

    /// `j_1, …, j_n` in pre-order.
    pub fn j_vector(&self) -> Vec<usize> {
        let mut out = vec![self.xi_leaves];
        for c in &self.children {
            out.extend(c.j_vector());
        }
        out
    }

    /// Arities of all vertices in pre-order.
    pub fn arities(&self) -> Vec<usize> {
        let mut out = vec![self.arity()];
        for c in &self.children {
            out.extend(c.arities());
        }
        out
    }

    /// Parent of each vertex in pre-order; the root has none.
    pub fn parents(&self) -> Vec<Option<usize>> {
        fn walk(t: &RootedTree, parent: Option<usize>, out: &mut Vec<Option<usize>>) {
            let me = out.len();
            out.push(parent);
            for c in &t.children {
                walk(c, Some(me), out);
            }
        }
        let mut out = Vec::new();
        walk(self, None, &mut out);
        out
    }

    /// Orderings of the vertices in which every vertex follows its parent,
    /// by the hook-length formula `n! / Π_v |subtree(v)|`.
    pub fn monotone_count(&self) -> u128 {
        fn sizes(t: &RootedTree, out: &mut Vec<u128>) -> u128 {
            let s = 1 + t.children.iter().map(|c| sizes(c, out)).sum::<u128>();
            out.push(s);
            s
        }
        let mut hooks = Vec::new();
        let n = sizes(self, &mut hooks);
        factorial(n as usize) / hooks.iter().product::<u128>()
    }

    /// Number of automorphisms permuting isomorphic sibling subtrees
    /// (ξ-leaves are not counted here).
    pub fn symmetry_factor(&self) -> u128 {
        let mut total: u128 = self
            .children
            .iter()
            .map(RootedTree::symmetry_factor)
            .product();
        // children are sorted, so isomorphic siblings are adjacent
        let mut run = 1;
        for w in self.children.windows(2) {
            if w[0] == w[1] {
                run += 1;
            } else {
                total *= factorial(run);
                run = 1;
            }
        }
        total * factorial(run)
    }

    /// `(-1)^n r / (n! j_1! ⋯ j_n!)`, without the symmetry factor.
    /// It over-counts trees with isomorphic sibling subtrees; see
    /// [`Self::coefficient`].
    pub fn unsym_coefficient<S: Scalar>(&self) -> S {
        self.coefficient_with(1)
    }

    /// `(-1)^n r / (n! σ j_1! ⋯ j_n!)` with `σ` the
    /// [`symmetry_factor`](Self::symmetry_factor). Equal to the unsymmetrised
    /// coefficient whenever every vertex has at most one child, in
    /// particular for every tree that contributes in a dgla.
    pub fn coefficient<S: Scalar>(&self) -> S {
        self.coefficient_with(self.symmetry_factor())
    }

    fn coefficient_with<S: Scalar>(&self, symmetry: u128) -> S {
        let n = self.vertex_count();
        let denominator: u128 = factorial(n)
            * symmetry
            * self
                .j_vector()
                .iter()
                .map(|&j| factorial(j))
                .product::<u128>();
        let r = S::from_u128(self.monotone_count()).expect("count fits");
        let d = S::from_u128(denominator).expect("factorials fit");
        S::sign(n % 2 == 1) * r / d
    }

    /// Canonical text encoding: a vertex is `(c_1 … c_k ξ^j x)`.
    pub fn encoding(&self) -> String {
        let mut parts: Vec<String> = self.children.iter().map(RootedTree::encoding).collect();
        parts.extend(std::iter::repeat_n("ξ".to_string(), self.xi_leaves));
        parts.push("x".into());
        format!("({})", parts.join(" "))
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding())
    }
}

/// All trees with at most `n_max` vertices and vertex arity at most
/// `arity_cap`; entry `k` holds the trees with `k + 1` vertices, sorted.
pub fn enumerate_trees(n_max: usize, arity_cap: usize) -> Vec<Vec<RootedTree>> {
    let mut by_size: Vec<Vec<RootedTree>> = Vec::new();
    if arity_cap == 0 {
        return vec![Vec::new(); n_max];
    }
    for n in 1..=n_max {
        let mut found = Vec::new();
        // candidate children: every tree with fewer vertices, in order
        let pool: Vec<&RootedTree> = by_size.iter().flatten().collect();
        let mut chosen: Vec<usize> = Vec::new();
        collect_multisets(
            &pool,
            n - 1,
            0,
            arity_cap - 1,
            &mut chosen,
            &mut |children| {
                for j in 0..=(arity_cap - 1 - children.len()) {
                    found.push(RootedTree::new(
                        j,
                        children.iter().map(|&i| pool[i].clone()).collect(),
                    ));
                }
            },
        );
        found.sort();
        found.dedup();
        by_size.push(found);
    }
    by_size
}

/// Non-decreasing index sequences into `pool` whose vertex counts add up
/// to `remaining`, with at most `slots` entries.
fn collect_multisets(
    pool: &[&RootedTree],
    remaining: usize,
    start: usize,
    slots: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    if slots == 0 {
        return;
    }
    for i in start..pool.len() {
        let size = pool[i].vertex_count();
        if size > remaining {
            break;
        }
        chosen.push(i);
        collect_multisets(pool, remaining - size, i, slots - 1, chosen, emit);
        chosen.pop();
    }
}

/// The bracket word of a tree: each vertex evaluates
/// `[c_1, …, c_k, ξ, …, ξ, x]` with the `x`-leaf last.
pub fn tree_word_l<S: Scalar>(
    spec: &AlgebraSpec<S>,
    tree: &RootedTree,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    let mut args = Vec::with_capacity(tree.arity());
    for c in &tree.children {
        let w = tree_word_l(spec, c, x, xi)?;
        if w.is_zero() {
            return Ok(GradedElement::zero());
        }
        args.push(w);
    }
    args.extend(std::iter::repeat_n(xi.clone(), tree.xi_leaves));
    args.push(x.clone());
    spec.eval_bracket(&args)
}

/// One input position of a planar vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Child(PlanarTree),
    Leaf,
}

/// An ordered rooted tree; leaves are unlabelled until a [`Labelling`] is
/// chosen.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarTree {
    pub slots: Vec<Slot>,
}

impl PlanarTree {
    pub fn vertex_count(&self) -> usize {
        1 + self
            .slots
            .iter()
            .map(|s| match s {
                Slot::Child(c) => c.vertex_count(),
                Slot::Leaf => 0,
            })
            .sum::<usize>()
    }

    pub fn leaf_count(&self) -> usize {
        self.slots
            .iter()
            .map(|s| match s {
                Slot::Child(c) => c.leaf_count(),
                Slot::Leaf => 1,
            })
            .sum()
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    /// Vertex orderings in which every vertex follows its parent.
    pub fn monotone_count(&self) -> u128 {
        fn sizes(t: &PlanarTree, out: &mut Vec<u128>) -> u128 {
            let mut s = 1;
            for slot in &t.slots {
                if let Slot::Child(c) = slot {
                    s += sizes(c, out);
                }
            }
            out.push(s);
            s
        }
        let mut hooks = Vec::new();
        let n = sizes(self, &mut hooks);
        factorial(n as usize) / hooks.iter().product::<u128>()
    }

    /// Number of `x`-labelled leaves at each vertex, in pre-order.
    pub fn x_leaves_per_vertex(&self, labelling: &Labelling) -> Vec<usize> {
        fn walk(t: &PlanarTree, labels: &[bool], next: &mut usize, out: &mut Vec<usize>) {
            let me = out.len();
            out.push(0);
            for s in &t.slots {
                match s {
                    Slot::Leaf => {
                        if labels[*next] {
                            out[me] += 1;
                        }
                        *next += 1;
                    }
                    Slot::Child(c) => walk(c, labels, next, out),
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &labelling.x_leaves, &mut 0, &mut out);
        out
    }

    /// Text form with leaves shown by their label (`x` or `ξ`) or `·` when
    /// unlabelled.
    pub fn encoding(&self, labels: Option<&Labelling>) -> String {
        fn walk(t: &PlanarTree, labels: Option<&[bool]>, next: &mut usize) -> String {
            let parts: Vec<String> = t
                .slots
                .iter()
                .map(|s| match s {
                    Slot::Child(c) => walk(c, labels, next),
                    Slot::Leaf => {
                        let l = match labels {
                            Some(l) if l[*next] => "x",
                            Some(_) => "ξ",
                            None => "·",
                        };
                        *next += 1;
                        l.to_string()
                    }
                })
                .collect();
            format!("({})", parts.join(" "))
        }
        walk(self, labels.map(|l| l.x_leaves.as_slice()), &mut 0)
    }
}

/// Which leaves (in pre-order) are labelled `x`; the others are ξ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labelling {
    pub x_leaves: Vec<bool>,
}

/// All planar trees with at most `n_max` vertices and arity at most
/// `arity_cap`, grouped by vertex count.
pub fn enumerate_planar(n_max: usize, arity_cap: usize) -> Vec<Vec<PlanarTree>> {
    let mut by_size: Vec<Vec<PlanarTree>> = Vec::new();
    for n in 1..=n_max {
        let mut found = Vec::new();
        for arity in 1..=arity_cap {
            let mut slots = Vec::with_capacity(arity);
            fill_slots(&by_size, n - 1, arity, &mut slots, &mut found);
        }
        by_size.push(found);
    }
    by_size
}

fn fill_slots(
    by_size: &[Vec<PlanarTree>],
    remaining: usize,
    left: usize,
    slots: &mut Vec<Slot>,
    out: &mut Vec<PlanarTree>,
) {
    if left == 0 {
        if remaining == 0 {
            out.push(PlanarTree {
                slots: slots.clone(),
            });
        }
        return;
    }
    slots.push(Slot::Leaf);
    fill_slots(by_size, remaining, left - 1, slots, out);
    slots.pop();
    for size in 1..=remaining {
        for c in &by_size[size - 1] {
            slots.push(Slot::Child(c.clone()));
            fill_slots(by_size, remaining - size, left - 1, slots, out);
            slots.pop();
        }
    }
}

/// Checks a labelling: exactly `n` leaves carry `x`, and the parent of any
/// vertex with an `x`-leaf has one as well.
pub fn is_admissible(tree: &PlanarTree, labelling: &Labelling, n: usize) -> bool {
    if labelling.x_leaves.len() != tree.leaf_count()
        || labelling.x_leaves.iter().filter(|&&b| b).count() != n
    {
        return false;
    }
    // returns whether this vertex has an x-leaf; fails via `ok`
    fn walk(t: &PlanarTree, labels: &[bool], next: &mut usize, ok: &mut bool) -> bool {
        let mut has_x = false;
        let mut child_has_x = false;
        for s in &t.slots {
            match s {
                Slot::Leaf => {
                    has_x |= labels[*next];
                    *next += 1;
                }
                Slot::Child(c) => child_has_x |= walk(c, labels, next, ok),
            }
        }
        if child_has_x && !has_x {
            *ok = false;
        }
        has_x
    }
    let mut ok = true;
    walk(tree, &labelling.x_leaves, &mut 0, &mut ok);
    ok
}

/// All admissible labellings of `tree` with `n` leaves labelled `x`.
pub fn labellings(tree: &PlanarTree, n: usize) -> Vec<Labelling> {
    let leaves = tree.leaf_count();
    let mut out = Vec::new();
    if n > leaves {
        return out;
    }
    let mut current = vec![false; leaves];
    choose(&mut current, 0, n, &mut |bits| {
        let l = Labelling {
            x_leaves: bits.to_vec(),
        };
        if is_admissible(tree, &l, n) {
            out.push(l);
        }
    });
    out
}

fn choose(bits: &mut [bool], from: usize, k: usize, emit: &mut dyn FnMut(&[bool])) {
    if k == 0 {
        emit(bits);
        return;
    }
    for i in from..bits.len() {
        if bits.len() - i < k {
            break;
        }
        bits[i] = true;
        choose(bits, i + 1, k - 1, emit);
        bits[i] = false;
    }
}

/// The word of a labelled planar tree, evaluated with the suspended
/// operations `b_i` on `ξ` (suspended degree 0) and `x` (suspended degree
/// -1), in slot order.
pub fn tree_word_a<S: Scalar>(
    spec: &AlgebraSpec<S>,
    tree: &PlanarTree,
    labelling: &Labelling,
    x: &GradedElement<S>,
    xi: &GradedElement<S>,
) -> Result<GradedElement<S>> {
    fn walk<S: Scalar>(
        spec: &AlgebraSpec<S>,
        t: &PlanarTree,
        labels: &[bool],
        next: &mut usize,
        x: &GradedElement<S>,
        xi: &GradedElement<S>,
    ) -> Result<GradedElement<S>> {
        let mut args = Vec::with_capacity(t.slots.len());
        for s in &t.slots {
            args.push(match s {
                Slot::Leaf => {
                    let l = labels[*next];
                    *next += 1;
                    if l {
                        x.clone()
                    } else {
                        xi.clone()
                    }
                }
                Slot::Child(c) => walk(spec, c, labels, next, x, xi)?,
            });
        }
        spec.suspended_op(&args)
    }
    walk(spec, tree, &labelling.x_leaves, &mut 0, x, xi)
}
