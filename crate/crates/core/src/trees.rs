//! Binary trees, their unordered shapes, and orbit bookkeeping.
//!
//! The symmetry group of the complete binary tree acts on `n`-vertex binary
//! trees by swapping left and right subtrees. Two trees share an orbit iff
//! they agree once left/right is forgotten, so an orbit is represented by its
//! [`TreeShape`] and the group itself is never built.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::catalan::{weighted_catalan_dp, DyckPath, Step};
use crate::error::{Error, Result};
use crate::weight::{
    check_membership, CheckWindow, FunctionWindow, MembershipVerdict, WeightSequence,
};

pub const DEFAULT_TREE_BOUND: u32 = 14;
pub const DEFAULT_ORBIT_BOUND: u32 = 18;

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct TreeNode {
    left: BinaryTree,
    right: BinaryTree,
    vertices: usize,
}

/// An ordered binary tree; every vertex has an optional left and right child.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BinaryTree(Option<Arc<TreeNode>>);

impl BinaryTree {
    pub fn empty() -> Self {
        BinaryTree(None)
    }

    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        let vertices = 1 + left.vertex_count() + right.vertex_count();
        BinaryTree(Some(Arc::new(TreeNode {
            left,
            right,
            vertices,
        })))
    }

    pub fn leaf() -> Self {
        Self::node(Self::empty(), Self::empty())
    }

    /// A root whose descendants all hang off left edges.
    pub fn left_chain(n: usize) -> Self {
        (0..n).fold(Self::empty(), |t, _| Self::node(t, Self::empty()))
    }

    pub fn right_chain(n: usize) -> Self {
        (0..n).fold(Self::empty(), |t, _| Self::node(Self::empty(), t))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn vertex_count(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.vertices)
    }

    pub fn children(&self) -> Option<(&BinaryTree, &BinaryTree)> {
        self.0.as_ref().map(|n| (&n.left, &n.right))
    }

    /// Number of left edges on the root path of each vertex, in preorder.
    pub fn left_depths(&self) -> Vec<u32> {
        fn go(t: &BinaryTree, depth: u32, out: &mut Vec<u32>) {
            if let Some((l, r)) = t.children() {
                out.push(depth);
                go(l, depth + 1, out);
                go(r, depth, out);
            }
        }
        let mut out = Vec::with_capacity(self.vertex_count());
        go(self, 0, &mut out);
        out
    }

    /// Depth-first bijection onto Dyck paths: `P(T) = U P(left) D P(right)`.
    pub fn to_path(&self) -> DyckPath {
        fn go(t: &BinaryTree, out: &mut Vec<Step>) {
            if let Some((l, r)) = t.children() {
                out.push(Step::Up);
                go(l, out);
                out.push(Step::Down);
                go(r, out);
            }
        }
        let mut steps = Vec::with_capacity(2 * self.vertex_count());
        go(self, &mut steps);
        DyckPath::from_steps_unchecked(steps)
    }

    /// `w_b(T; x) = prod over vertices v of b(x + l_v)`.
    pub fn weight(&self, b: &WeightSequence, x: u64) -> Result<BigInt> {
        let mut w = BigInt::one();
        for d in self.left_depths() {
            w *= b.evaluate(x + d as u64)?;
        }
        Ok(w)
    }

    pub fn shape(&self) -> TreeShape {
        match self.children() {
            None => TreeShape::empty(),
            Some((l, r)) => TreeShape::join(l.shape(), r.shape()),
        }
    }
}

impl fmt::Display for BinaryTree {
    /// `.` for the empty tree, `(L R)` for a vertex.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children() {
            None => f.write_str("."),
            Some((l, r)) => write!(f, "({l} {r})"),
        }
    }
}

pub fn tree_to_path(t: &BinaryTree) -> DyckPath {
    t.to_path()
}

pub fn tree_weight(t: &BinaryTree, b: &WeightSequence, x: u64) -> Result<BigInt> {
    t.weight(b, x)
}

pub fn canonical_shape(t: &BinaryTree) -> TreeShape {
    t.shape()
}

/// Every binary tree on `n` vertices, each once. Refuses `n > bound`.
pub fn enumerate_trees(n: u32, bound: u32) -> Result<Vec<BinaryTree>> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "tree enumeration order",
            requested: n as u64,
            bound: bound as u64,
        });
    }
    let n = n as usize;
    let mut by_size: Vec<Vec<BinaryTree>> = vec![vec![BinaryTree::empty()]];
    for k in 1..=n {
        let mut trees = Vec::new();
        for left in 0..k {
            for l in &by_size[left] {
                for r in &by_size[k - 1 - left] {
                    trees.push(BinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(trees);
    }
    Ok(by_size.swap_remove(n))
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct ShapeNode {
    vertices: usize,
    // lo <= hi in the canonical order
    lo: TreeShape,
    hi: TreeShape,
}

/// Binary tree with left and right forgotten: each vertex holds an unordered
/// pair of optional subshapes, stored sorted.
///
/// Shapes are totally ordered by vertex count, then smaller child, then
/// larger child; the empty shape is the least.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TreeShape(Option<Arc<ShapeNode>>);

impl TreeShape {
    pub fn empty() -> Self {
        TreeShape(None)
    }

    pub fn leaf() -> Self {
        Self::join(Self::empty(), Self::empty())
    }

    /// The shape with children `a` and `b`, in either order.
    pub fn join(a: TreeShape, b: TreeShape) -> Self {
        if a <= b {
            Self::join_sorted(a, b)
        } else {
            Self::join_sorted(b, a)
        }
    }

    fn join_sorted(lo: TreeShape, hi: TreeShape) -> Self {
        let vertices = 1 + lo.vertex_count() + hi.vertex_count();
        TreeShape(Some(Arc::new(ShapeNode { vertices, lo, hi })))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn vertex_count(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.vertices)
    }

    /// The (smaller, larger) child shapes.
    pub fn children(&self) -> Option<(&TreeShape, &TreeShape)> {
        self.0.as_ref().map(|n| (&n.lo, &n.hi))
    }

    /// `t` with `#orbit = 2^t`: one factor 2 per vertex with distinct child shapes.
    pub fn orbit_size_exponent(&self) -> u32 {
        match self.children() {
            None => 0,
            Some((lo, hi)) => {
                lo.orbit_size_exponent() + hi.orbit_size_exponent() + u32::from(lo != hi)
            }
        }
    }

    /// Number of ordered binary trees in the orbit.
    pub fn orbit_size(&self) -> BigInt {
        match self.children() {
            None => BigInt::one(),
            Some((lo, hi)) => {
                let prod = lo.orbit_size() * hi.orbit_size();
                if lo == hi {
                    prod
                } else {
                    prod * 2
                }
            }
        }
    }

    /// Some ordered tree in the orbit (smaller child on the left).
    pub fn representative(&self) -> BinaryTree {
        match self.children() {
            None => BinaryTree::empty(),
            Some((lo, hi)) => BinaryTree::node(lo.representative(), hi.representative()),
        }
    }
}

impl PartialOrd for TreeShape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TreeShape {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) if Arc::ptr_eq(a, b) => Ordering::Equal,
            (Some(a), Some(b)) => a
                .vertices
                .cmp(&b.vertices)
                .then_with(|| a.lo.cmp(&b.lo))
                .then_with(|| a.hi.cmp(&b.hi)),
        }
    }
}

impl fmt::Display for TreeShape {
    /// Balanced parentheses: a vertex is `(` followed by its nonempty child
    /// shapes in canonical order, then `)`. The empty shape is the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((lo, hi)) = self.children() {
            write!(f, "({lo}{hi})")?;
        }
        Ok(())
    }
}

impl FromStr for TreeShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        fn group(bytes: &[u8], pos: &mut usize, input: &str) -> Result<TreeShape> {
            let bad = |reason: String| Error::Parse {
                input: input.to_string(),
                reason,
            };
            if bytes.get(*pos) != Some(&b'(') {
                return Err(bad(format!("expected `(` at {}", *pos)));
            }
            *pos += 1;
            let mut kids = Vec::new();
            while bytes.get(*pos) == Some(&b'(') {
                kids.push(group(bytes, pos, input)?);
            }
            if bytes.get(*pos) != Some(&b')') {
                return Err(bad(format!("expected `)` at {}", *pos)));
            }
            *pos += 1;
            match kids.len() {
                0 => Ok(TreeShape::leaf()),
                1 => Ok(TreeShape::join(TreeShape::empty(), kids.pop().unwrap())),
                2 => {
                    let b = kids.pop().unwrap();
                    Ok(TreeShape::join(kids.pop().unwrap(), b))
                }
                k => Err(bad(format!("vertex with {k} children"))),
            }
        }
        let s = s.trim();
        if s.is_empty() {
            return Ok(TreeShape::empty());
        }
        let mut pos = 0;
        let shape = group(s.as_bytes(), &mut pos, s)?;
        if pos != s.len() {
            return Err(Error::Parse {
                input: s.to_string(),
                reason: format!("trailing input at {pos}"),
            });
        }
        Ok(shape)
    }
}

/// `r_b(O; x)` on `[origin, origin + len)` for the orbit of `shape`.
///
/// Uses `r(O) = b * <r(O1), r(O2)>` over the child orbits, with `r = 1` for
/// the empty shape. Fails with [`Error::InexactOrbit`] if some halving is
/// not exact, which cannot happen when `b` lies in the class F.
pub fn reduced_weight(
    shape: &TreeShape,
    b: &WeightSequence,
    origin: u64,
    len: usize,
) -> Result<FunctionWindow> {
    // each level down needs one more point on the right
    let top = shape.vertex_count();
    let mut memo: HashMap<TreeShape, FunctionWindow> = HashMap::new();
    fn go(
        s: &TreeShape,
        b: &WeightSequence,
        origin: u64,
        width: usize,
        memo: &mut HashMap<TreeShape, FunctionWindow>,
    ) -> Result<FunctionWindow> {
        let len = width - s.vertex_count();
        let Some((lo, hi)) = s.children() else {
            return Ok(FunctionWindow::constant(1, origin, len));
        };
        if let Some(w) = memo.get(s) {
            return Ok(w.clone());
        }
        let r_lo = go(lo, b, origin, width, memo)?;
        let r_hi = go(hi, b, origin, width, memo)?;
        let w = combine(s, &r_lo, &r_hi, &b.window(origin, len)?)?;
        memo.insert(s.clone(), w.clone());
        Ok(w)
    }
    go(shape, b, origin, len + top, &mut memo)
}

fn combine(
    shape: &impl fmt::Display,
    r_lo: &FunctionWindow,
    r_hi: &FunctionWindow,
    bw: &FunctionWindow,
) -> Result<FunctionWindow> {
    let bracket = r_lo.bracket(r_hi).map_err(|e| match e {
        Error::InexactBracket { x } => Error::InexactOrbit {
            shape: shape.to_string(),
            x,
        },
        other => other,
    })?;
    bw.product(&bracket)
}

/// One orbit of the swap group on `n`-vertex trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub shape: TreeShape,
    /// `#O = 2^size_exponent`.
    pub size_exponent: u32,
    pub size: BigInt,
    /// `r_b(O; x)` on `[0, width)`; absent for size-only censuses.
    pub reduced_weight: Option<FunctionWindow>,
}

impl OrbitRecord {
    pub fn reduced_weight_at_zero(&self) -> Option<&BigInt> {
        self.reduced_weight.as_ref().and_then(|w| w.get(0))
    }
}

/// All shapes on up to `n` vertices, grouped by vertex count in canonical order.
struct ShapeCatalog {
    // by_size[k][i] = (shape, lo index, hi index) where indices are (size, position)
    by_size: Vec<Vec<CatalogEntry>>,
}

struct CatalogEntry {
    shape: TreeShape,
    lo: (usize, usize),
    hi: (usize, usize),
    exponent: u32,
}

impl ShapeCatalog {
    fn build(n: usize) -> Self {
        let mut by_size: Vec<Vec<CatalogEntry>> = vec![vec![CatalogEntry {
            shape: TreeShape::empty(),
            lo: (0, 0),
            hi: (0, 0),
            exponent: 0,
        }]];
        for k in 1..=n {
            let m = k - 1;
            let mut level = Vec::new();
            for a in 0..=m / 2 {
                let b = m - a;
                for i in 0..by_size[a].len() {
                    let j_start = if a == b { i } else { 0 };
                    for j in j_start..by_size[b].len() {
                        let (lo, hi) = (&by_size[a][i], &by_size[b][j]);
                        let distinct = (a, i) != (b, j);
                        level.push(CatalogEntry {
                            shape: TreeShape::join_sorted(lo.shape.clone(), hi.shape.clone()),
                            lo: (a, i),
                            hi: (b, j),
                            exponent: lo.exponent + hi.exponent + u32::from(distinct),
                        });
                    }
                }
            }
            by_size.push(level);
        }
        ShapeCatalog { by_size }
    }

    /// `r_b` for every catalogued shape; shape of size `k` gets `width + n - k` points from 0.
    fn reduced_weights(
        &self,
        b: &WeightSequence,
        width: usize,
    ) -> Result<Vec<Vec<FunctionWindow>>> {
        let n = self.by_size.len() - 1;
        let span = width + n;
        let mut out: Vec<Vec<FunctionWindow>> = vec![vec![FunctionWindow::constant(1, 0, span)]];
        for k in 1..=n {
            let bw = b.window(0, span - k)?;
            let mut level = Vec::with_capacity(self.by_size[k].len());
            for e in &self.by_size[k] {
                let r_lo = &out[e.lo.0][e.lo.1];
                let r_hi = &out[e.hi.0][e.hi.1];
                level.push(combine(&e.shape, r_lo, r_hi, &bw)?);
            }
            out.push(level);
        }
        Ok(out)
    }
}

/// Orbits of the swap group on `n`-vertex trees, in canonical shape order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCensus {
    pub n: u32,
    pub records: Vec<OrbitRecord>,
}

fn check_orbit_bound(n: u32, bound: u32) -> Result<()> {
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "orbit census order",
            requested: n as u64,
            bound: bound as u64,
        });
    }
    Ok(())
}

/// Orbit sizes only, no weights.
pub fn shape_census(n: u32, bound: u32) -> Result<OrbitCensus> {
    check_orbit_bound(n, bound)?;
    let mut catalog = ShapeCatalog::build(n as usize);
    let records = catalog
        .by_size
        .swap_remove(n as usize)
        .into_iter()
        .map(|e| OrbitRecord {
            size: BigInt::one() << e.exponent,
            size_exponent: e.exponent,
            shape: e.shape,
            reduced_weight: None,
        })
        .collect();
    Ok(OrbitCensus { n, records })
}

/// Every orbit with its size and `r_b(O; x)` for `0 <= x < width`.
pub fn orbit_census(n: u32, b: &WeightSequence, width: usize, bound: u32) -> Result<OrbitCensus> {
    check_orbit_bound(n, bound)?;
    let width = width.max(1);
    let mut catalog = ShapeCatalog::build(n as usize);
    let mut weights = catalog.reduced_weights(b, width)?;
    let top = weights.swap_remove(n as usize);
    let records = catalog
        .by_size
        .swap_remove(n as usize)
        .into_iter()
        .zip(top)
        .map(|(e, r)| OrbitRecord {
            size: BigInt::one() << e.exponent,
            size_exponent: e.exponent,
            shape: e.shape,
            reduced_weight: Some(r),
        })
        .collect();
    Ok(OrbitCensus { n, records })
}

/// `(2s - 1)!! = 1 * 3 * ... * (2s - 1)`, with `(-1)!! = 1`.
pub fn odd_double_factorial(s: u32) -> BigInt {
    (1..=s as u64).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

impl OrbitCensus {
    /// `s(n+1) - 1`, the smallest possible orbit size exponent.
    pub fn predicted_min_exponent(&self) -> u32 {
        (self.n + 1).count_ones() - 1
    }

    /// Number of orbits of each size exponent.
    pub fn histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for r in &self.records {
            *h.entry(r.size_exponent).or_insert(0) += 1;
        }
        h
    }

    pub fn min_exponent(&self) -> u32 {
        self.records
            .iter()
            .map(|r| r.size_exponent)
            .min()
            .unwrap_or(0)
    }

    pub fn total_size(&self) -> BigInt {
        self.records.iter().map(|r| &r.size).sum()
    }

    /// Number of orbits attaining the smallest size.
    pub fn minimal_count(&self) -> u64 {
        let m = self.min_exponent();
        self.records.iter().filter(|r| r.size_exponent == m).count() as u64
    }

    /// Minimal exponent is `s(n+1) - 1` and exactly `(2s - 1)!!` orbits attain it.
    pub fn orbit_sizes_ok(&self) -> bool {
        let s = self.predicted_min_exponent();
        self.min_exponent() == s && BigInt::from(self.minimal_count()) == odd_double_factorial(s)
    }

    /// `sum over orbits of #O * r_b(O; 0)`, or `None` for a size-only census.
    pub fn orbit_sum(&self) -> Option<BigInt> {
        self.records
            .iter()
            .map(|r| r.reduced_weight_at_zero().map(|v| &r.size * v))
            .sum()
    }
}

/// Checks that every `r_b(O; 0)` is odd and that the orbit sum equals
/// the lattice-path value of `C_n^b`. Returns the common value.
pub fn check_decomposition(census: &OrbitCensus, b: &WeightSequence) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for r in &census.records {
        let v = r
            .reduced_weight_at_zero()
            .ok_or_else(|| Error::domain("census carries no reduced weights"))?;
        if v.is_even() {
            return Err(Error::EvenReducedWeight {
                shape: r.shape.to_string(),
                value: v.clone(),
            });
        }
        total += &r.size * v;
    }
    let direct = weighted_catalan_dp(census.n, b)?.value;
    if total != direct {
        return Err(Error::DecompositionMismatch {
            orbit_sum: total,
            direct,
        });
    }
    Ok(total)
}

/// Membership check of `b`, then the orbit decomposition of `C_n^b`.
pub fn orbit_decomposition_check(
    n: u32,
    b: &WeightSequence,
    window: CheckWindow,
    bound: u32,
) -> Result<BigInt> {
    if let MembershipVerdict::ProvenNonMember { witness } = check_membership(b, window)? {
        return Err(Error::NotInClass(witness));
    }
    let census = orbit_census(n, b, 1, bound)?;
    check_decomposition(&census, b)
}
