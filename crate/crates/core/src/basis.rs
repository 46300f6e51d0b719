//! Reference tetrahedron, Lagrange shape functions of order 1–4, node
//! layouts, and quadrature rules.
//!
//! The reference element is the unit right tetrahedron
//! `{(r,s,t) : r,s,t >= 0, r+s+t <= 1}` with barycentric coordinates
//! `λ = (1-r-s-t, r, s, t)` and corners
//!
//! ```text
//! corner 0: (0,0,0)    corner 1: (1,0,0)    corner 2: (0,1,0)    corner 3: (0,0,1)
//! ```
//!
//! Nodes of an order-`p` element sit on the principal lattice `(i1,i2,i3)/p`
//! and are enumerated corners first, then edge nodes, then face nodes, then
//! interior nodes (see [`reference_nodes`] for the exact ordering). This
//! ordering is the one used by the mesh file format.

use nalgebra::Vector3;
use thiserror::Error;

/// Tolerance for reference-domain membership checks.
pub const REF_TOL: f64 = 1e-10;

/// Highest supported Lagrange order.
pub const MAX_ORDER: usize = 4;

/// Edges of the reference tetrahedron as corner pairs, in enumeration order.
pub const TET_EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Faces of the reference tetrahedron as corner triples, in enumeration order.
pub const TET_FACES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BasisError {
    #[error("unsupported Lagrange order {0} (supported: 1..=4)")]
    UnsupportedOrder(usize),
    #[error("node index {index} out of range for order {order} ({count} nodes)")]
    NodeIndexOutOfRange {
        order: usize,
        index: usize,
        count: usize,
    },
    #[error("no quadrature rule with exactness {0} available (max 10)")]
    UnsupportedExactness(usize),
}

/// A point in the reference tetrahedron coordinates `(r,s,t)`.
///
/// Construction does not clamp or validate; use [`RefPoint::is_inside`] where
/// membership matters. Inverse-map results are allowed to lie slightly (or,
/// for proxy embedding, arbitrarily) outside the reference domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefPoint(pub Vector3<f64>);

impl RefPoint {
    pub fn new(r: f64, s: f64, t: f64) -> Self {
        RefPoint(Vector3::new(r, s, t))
    }

    /// Barycentric coordinates `(λ0, λ1, λ2, λ3)`.
    pub fn barycentric(&self) -> [f64; 4] {
        let v = self.0;
        [1.0 - v.x - v.y - v.z, v.x, v.y, v.z]
    }

    /// True when all barycentric coordinates lie in `[-tol, 1+tol]`.
    pub fn is_inside(&self, tol: f64) -> bool {
        self.barycentric()
            .iter()
            .all(|&l| (-tol..=1.0 + tol).contains(&l))
    }

    /// L1 norm of the reference coordinates, used by the proxy-embedding
    /// tie-break.
    pub fn l1_norm(&self) -> f64 {
        self.0.x.abs() + self.0.y.abs() + self.0.z.abs()
    }
}

/// Number of nodes of an order-`p` Lagrange tetrahedron: `(p+1)(p+2)(p+3)/6`.
pub fn node_count(order: usize) -> usize {
    (order + 1) * (order + 2) * (order + 3) / 6
}

fn check_order(order: usize) -> Result<(), BasisError> {
    if (1..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(BasisError::UnsupportedOrder(order))
    }
}

/// Barycentric multi-indices `(i0,i1,i2,i3)` with `Σ i = order`, in node
/// enumeration order: corners, edge nodes (edge order per [`TET_EDGES`],
/// walking from the first corner to the second), face nodes (face order per
/// [`TET_FACES`], lexicographic in the first two face coordinates), interior
/// nodes (lexicographic in `(i0,i1,i2)`).
pub fn node_multi_indices(order: usize) -> Result<Vec<[usize; 4]>, BasisError> {
    check_order(order)?;
    let p = order;
    let mut out = Vec::with_capacity(node_count(p));
    for c in 0..4 {
        let mut mi = [0usize; 4];
        mi[c] = p;
        out.push(mi);
    }
    for [a, b] in TET_EDGES {
        for k in 1..p {
            let mut mi = [0usize; 4];
            mi[a] = p - k;
            mi[b] = k;
            out.push(mi);
        }
    }
    for [a, b, c] in TET_FACES {
        for ia in 1..p {
            for ib in 1..p {
                if ia + ib < p {
                    let ic = p - ia - ib;
                    if ic >= 1 {
                        let mut mi = [0usize; 4];
                        mi[a] = ia;
                        mi[b] = ib;
                        mi[c] = ic;
                        out.push(mi);
                    }
                }
            }
        }
    }
    // interior
    for i0 in 1..p {
        for i1 in 1..p {
            for i2 in 1..p {
                if i0 + i1 + i2 < p {
                    let i3 = p - i0 - i1 - i2;
                    if i3 >= 1 {
                        out.push([i0, i1, i2, i3]);
                    }
                }
            }
        }
    }
    debug_assert_eq!(out.len(), node_count(p));
    Ok(out)
}

fn multi_index_point(mi: [usize; 4], order: usize) -> RefPoint {
    let p = order as f64;
    RefPoint::new(
        mi[1] as f64 / p,
        mi[2] as f64 / p,
        mi[3] as f64 / p,
    )
}

/// Reference node positions for the equispaced Lagrange layout.
pub fn reference_nodes(order: usize) -> Result<Vec<RefPoint>, BasisError> {
    Ok(node_multi_indices(order)?
        .into_iter()
        .map(|mi| multi_index_point(mi, order))
        .collect())
}

/// One-dimensional Lagrange factor `P_k(x) = Π_{m=0}^{k-1} (p·x - m)/(k - m)`.
fn factor(k: usize, p: f64, x: f64) -> f64 {
    let mut v = 1.0;
    for m in 0..k {
        v *= (p * x - m as f64) / (k - m) as f64;
    }
    v
}

/// Derivative of [`factor`] with respect to `x`.
fn factor_deriv(k: usize, p: f64, x: f64) -> f64 {
    let mut acc = 0.0;
    for m in 0..k {
        let mut term = p / (k - m) as f64;
        for m2 in 0..k {
            if m2 != m {
                term *= (p * x - m2 as f64) / (k - m2) as f64;
            }
        }
        acc += term;
    }
    acc
}

/// Evaluate shape function `node_index` of the given order at `p`.
///
/// The Lagrange property holds exactly at the equispaced nodes: 1 at the own
/// node, 0 at every other node of the same order. The polynomial extends to
/// all of space; callers that need reference-domain membership check it
/// themselves.
pub fn eval_basis(order: usize, node_index: usize, p: &RefPoint) -> Result<f64, BasisError> {
    let mi = node_multi_index(order, node_index)?;
    let lam = p.barycentric();
    let po = order as f64;
    let mut v = 1.0;
    for c in 0..4 {
        v *= factor(mi[c], po, lam[c]);
    }
    Ok(v)
}

/// Gradient of shape function `node_index` with respect to `(r,s,t)`.
pub fn eval_basis_grad(
    order: usize,
    node_index: usize,
    p: &RefPoint,
) -> Result<Vector3<f64>, BasisError> {
    let mi = node_multi_index(order, node_index)?;
    let lam = p.barycentric();
    let po = order as f64;
    let vals: [f64; 4] = std::array::from_fn(|c| factor(mi[c], po, lam[c]));
    let ders: [f64; 4] = std::array::from_fn(|c| factor_deriv(mi[c], po, lam[c]));
    // d/dλ_c of the product, times ∂λ_c/∂(r,s,t):
    //   λ0 = 1-r-s-t contributes (-1,-1,-1); λ1,λ2,λ3 contribute unit axes.
    let mut dlam = [0.0f64; 4];
    for c in 0..4 {
        let mut term = ders[c];
        for c2 in 0..4 {
            if c2 != c {
                term *= vals[c2];
            }
        }
        dlam[c] = term;
    }
    Ok(Vector3::new(
        dlam[1] - dlam[0],
        dlam[2] - dlam[0],
        dlam[3] - dlam[0],
    ))
}

fn node_multi_index(order: usize, node_index: usize) -> Result<[usize; 4], BasisError> {
    let mis = node_multi_indices(order)?;
    mis.get(node_index).copied().ok_or(BasisError::NodeIndexOutOfRange {
        order,
        index: node_index,
        count: mis.len(),
    })
}

/// A quadrature rule on the reference tetrahedron.
///
/// Weights are positive and sum to 1/6 (the reference volume); the rule
/// integrates polynomials of total degree up to `exactness` exactly.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub points: Vec<RefPoint>,
    pub weights: Vec<f64>,
    pub exactness: usize,
}

impl QuadratureRule {
    /// Integrate `f` over the reference tetrahedron.
    pub fn integrate(&self, mut f: impl FnMut(&RefPoint) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }
}

/// Smallest available symmetric positive-weight rule exact to at least
/// `min_exactness` (supported up to 10).
///
/// Rules are the Witherden–Vincent fully symmetric tetrahedron rules, remapped
/// from the `[-1,1]`-corner reference tet to the unit right tet (points
/// `(x+1)/2`, weights scaled by 1/8).
pub fn quadrature(min_exactness: usize) -> Result<QuadratureRule, BasisError> {
    let strength = min_exactness.max(1);
    let (weights, points) = fenris_quadrature::polyquad::tetrahedron(strength)
        .map_err(|_| BasisError::UnsupportedExactness(min_exactness))?;
    let points = points
        .iter()
        .map(|p| RefPoint::new(0.5 * (p[0] + 1.0), 0.5 * (p[1] + 1.0), 0.5 * (p[2] + 1.0)))
        .collect();
    let weights = weights.iter().map(|w| w / 8.0).collect();
    Ok(QuadratureRule {
        points,
        weights,
        exactness: strength,
    })
}

/// Shape-function values and reference gradients tabulated at a fixed point
/// set, used by assembly loops.
#[derive(Debug, Clone)]
pub struct BasisTable {
    pub order: usize,
    /// `values[q][i]`: basis i at point q.
    pub values: Vec<Vec<f64>>,
    /// `grads[q][i]`: reference gradient of basis i at point q.
    pub grads: Vec<Vec<Vector3<f64>>>,
}

impl BasisTable {
    pub fn tabulate(order: usize, points: &[RefPoint]) -> Result<Self, BasisError> {
        let n = node_count(order);
        let mut values = Vec::with_capacity(points.len());
        let mut grads = Vec::with_capacity(points.len());
        for p in points {
            let mut v = Vec::with_capacity(n);
            let mut g = Vec::with_capacity(n);
            for i in 0..n {
                v.push(eval_basis(order, i, p)?);
                g.push(eval_basis_grad(order, i, p)?);
            }
            values.push(v);
            grads.push(g);
        }
        Ok(BasisTable {
            order,
            values,
            grads,
        })
    }
}
