//! Cohomology of the Yamaguti complex, computed through matrices of the
//! coboundary operators in canonical cochain coordinates.
//!
//! Nodes of the deformation complex:
//!
//! ```text
//! C^1 --delta--> C^(2,3) --(delta*, delta)--> C^(3,4) x C^(4,5) --(0, delta)--> C^(6,7)
//! ```
//!
//! `h23` takes kernel / image at the second node, `h_deformation_3445` at the
//! third. `h_general` computes H^(2p,2p+1) = ker delta_p / im delta_{p-1} for
//! p >= 2. All groups come back as a `CohomologyResult` carrying canonical
//! representatives, so obstruction classes can be expressed in coordinates.

use crate::coboundary::{delta_one_canonical, delta_pair_canonical, delta_star_canonical};
use crate::cochain::{space_dim, Cochain, CochainPair};
use crate::linalg::{Matrix, Scalar, Subspace};
use crate::rep::Representation;
use num_traits::Zero;

/// Entry-count guard: matrix assembly refuses above this (the general-level
/// groups grow like n^(2p) and are only offered while they stay desk-sized).
pub const MAX_MATRIX_ENTRIES: usize = 5_000_000;

/// A cohomology computation that would exceed the size guard.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("coboundary matrix would hold {entries} entries (limit {limit}); the group is too large to compute here")]
pub struct TooLarge {
    pub entries: usize,
    pub limit: usize,
}

fn guard(rows: usize, cols: usize) -> Result<(), TooLarge> {
    let entries = rows.saturating_mul(cols);
    if entries > MAX_MATRIX_ENTRIES {
        return Err(TooLarge { entries, limit: MAX_MATRIX_ENTRIES });
    }
    Ok(())
}

fn unit(dim: usize, j: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[j] = Scalar::from_integer(1.into());
    v
}

fn assemble(rows: usize, cols: usize, mut column: impl FnMut(usize) -> Vec<Scalar>) -> Matrix {
    let mut out = Matrix::zero(rows, cols);
    for j in 0..cols {
        let col = column(j);
        debug_assert_eq!(col.len(), rows);
        for (i, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Matrix of delta: C^1 -> C^(2,3) in canonical coordinates.
pub fn delta_one_matrix(rep: &Representation) -> Matrix {
    let (n, m) = (rep.algebra().dim(), rep.coeff_dim());
    let cols = space_dim(n, m, 1, 0);
    let rows = CochainPair::space_dim(1, n, m);
    assemble(rows, cols, |j| {
        let f = Cochain::from_canonical(n, m, 1, 0, &unit(cols, j));
        delta_one_canonical(rep, &f)
    })
}

/// Matrix of delta: C^(2p,2p+1) -> C^(2p+2,2p+3) in canonical coordinates.
pub fn delta_level_matrix(rep: &Representation, p: usize) -> Result<Matrix, TooLarge> {
    assert!(p >= 1);
    let (n, m) = (rep.algebra().dim(), rep.coeff_dim());
    let cols = CochainPair::space_dim(p, n, m);
    let rows = CochainPair::space_dim(p + 1, n, m);
    guard(rows, cols)?;
    Ok(assemble(rows, cols, |j| {
        let c = CochainPair::from_canonical(p, n, m, &unit(cols, j));
        delta_pair_canonical(rep, &c)
    }))
}

/// Matrix of delta*: C^(2,3) -> C^3 x C^4 in canonical coordinates (the C^4
/// block carries one constrained pair).
pub fn delta_star_matrix(rep: &Representation) -> Matrix {
    let (n, m) = (rep.algebra().dim(), rep.coeff_dim());
    let cols = CochainPair::space_dim(1, n, m);
    let rows = node34_dim(n, m);
    assemble(rows, cols, |j| {
        let c = CochainPair::from_canonical(1, n, m, &unit(cols, j));
        delta_star_canonical(rep, &c)
    })
}

/// Canonical dimension of the C^(3,4) node.
pub fn node34_dim(n: usize, m: usize) -> usize {
    space_dim(n, m, 3, 1) + space_dim(n, m, 4, 1)
}

/// The stacked matrix of (delta*, delta) on C^(2,3); its kernel is Z^(2,3)
/// and its column space is the image inside C^(3,4) x C^(4,5).
pub fn delta_star_delta_matrix(rep: &Representation) -> Matrix {
    let (n, m) = (rep.algebra().dim(), rep.coeff_dim());
    let cols = CochainPair::space_dim(1, n, m);
    let rows = node34_dim(n, m) + CochainPair::space_dim(2, n, m);
    assemble(rows, cols, |j| {
        let c = CochainPair::from_canonical(1, n, m, &unit(cols, j));
        let mut col = delta_star_canonical(rep, &c);
        col.extend(delta_pair_canonical(rep, &c));
        col
    })
}

/// Z^(2,3) = ker (delta*, delta) acting on pairs, in canonical coordinates.
pub fn z23(rep: &Representation) -> Subspace {
    let (n, m) = (rep.algebra().dim(), rep.coeff_dim());
    let ambient = CochainPair::space_dim(1, n, m);
    Subspace::from_spanning(delta_star_delta_matrix(rep).kernel_basis(), ambient)
}

/// B^(2,3) = delta(C^1), the coboundaries of diagonal one-cochains.
pub fn b23(rep: &Representation) -> Subspace {
    delta_one_matrix(rep).column_space()
}

/// Dimensions of the componentwise cocycle spaces Z^2 and Z^3, where the
/// partner component of the pair is taken to be zero. Reported alongside the
/// kernel form; the two need not agree.
pub fn z23_product_dims(rep: &Representation) -> (usize, usize) {
    let (n, m) = (rep.algebra().dim(), rep.coeff_dim());
    let c2 = space_dim(n, m, 2, 1);
    let c3 = space_dim(n, m, 3, 1);
    let d4 = space_dim(n, m, 4, 2);
    let d5 = space_dim(n, m, 5, 2);
    let s3 = space_dim(n, m, 3, 1);
    let s4 = space_dim(n, m, 4, 1);
    // f with g = 0: conditions delta_I(f,0) = 0 and delta*_I(f,0) = 0
    let m2 = assemble(d4 + s3, c2, |j| {
        let c = CochainPair {
            f: Cochain::from_canonical(n, m, 2, 1, &unit(c2, j)),
            g: Cochain::zero_with_pairs(3, n, m, 1),
        };
        let mut col = delta_pair_canonical(rep, &c);
        col.truncate(d4);
        let star = delta_star_canonical(rep, &c);
        col.extend_from_slice(&star[..s3]);
        col
    });
    // g with f = 0: conditions delta_II(g) = 0 and delta*_II(0,g) = 0
    let m3 = assemble(d5 + s4, c3, |j| {
        let c = CochainPair {
            f: Cochain::zero_with_pairs(2, n, m, 1),
            g: Cochain::from_canonical(n, m, 3, 1, &unit(c3, j)),
        };
        let full = delta_pair_canonical(rep, &c);
        let mut col = full[d4..].to_vec();
        let star = delta_star_canonical(rep, &c);
        col.extend_from_slice(&star[s3..]);
        col
    });
    (c2 - m2.rank(), c3 - m3.rank())
}

/// One computed cohomology group: cocycles, coboundaries, and a canonical
/// set of class representatives, all in the node's canonical coordinates.
#[derive(Debug, Clone)]
pub struct CohomologyResult {
    node: String,
    z: Subspace,
    b: Subspace,
    reps: Subspace,
    product_z_dims: Option<(usize, usize)>,
}

impl CohomologyResult {
    fn new(node: &str, z: Subspace, b: Subspace) -> CohomologyResult {
        assert!(
            z.contains_subspace(&b),
            "coboundaries escape the cocycle space at node {node}: the complex does not close"
        );
        let reduced: Vec<_> = z.basis_rows().iter().map(|r| b.reduce(r)).collect();
        let reps = Subspace::from_spanning(reduced, z.ambient());
        CohomologyResult { node: node.to_string(), z, b, reps, product_z_dims: None }
    }

    pub fn node(&self) -> &str {
        &self.node
    }

    pub fn ambient_dim(&self) -> usize {
        self.z.ambient()
    }

    pub fn z_dim(&self) -> usize {
        self.z.dim()
    }

    pub fn b_dim(&self) -> usize {
        self.b.dim()
    }

    pub fn h_dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.z
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.b
    }

    /// Canonical class representatives (one coordinate row per class).
    pub fn representatives(&self) -> Vec<Vec<Scalar>> {
        self.reps.basis_rows()
    }

    /// Dimensions (dim Z^2, dim Z^3) of the componentwise cocycle spaces,
    /// only present at the (2,3) node.
    pub fn product_z_dims(&self) -> Option<(usize, usize)> {
        self.product_z_dims
    }

    /// Coordinates of a cocycle's class in the representative basis.
    /// `None` when the vector is not a cocycle at this node.
    pub fn class(&self, cocycle: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.z.contains(cocycle) {
            return None;
        }
        let residue = self.b.reduce(cocycle);
        let coords = self.reps.coordinates(&residue);
        debug_assert!(coords.is_some());
        coords
    }

    /// Whether a cocycle is a coboundary. `None` when it is not a cocycle.
    pub fn class_is_trivial(&self, cocycle: &[Scalar]) -> Option<bool> {
        if !self.z.contains(cocycle) {
            return None;
        }
        Some(self.b.contains(cocycle))
    }
}

/// H^(2,3)(L;V) = Z^(2,3) / B^(2,3) over the canonical C^(2,3) coordinates.
pub fn h23(rep: &Representation) -> Result<CohomologyResult, TooLarge> {
    let (n, m) = (rep.algebra().dim(), rep.coeff_dim());
    let cols = CochainPair::space_dim(1, n, m);
    guard(node34_dim(n, m) + CochainPair::space_dim(2, n, m), cols)?;
    let mut result = CohomologyResult::new("23", z23(rep), b23(rep));
    result.product_z_dims = Some(z23_product_dims(rep));
    Ok(result)
}

/// The obstruction-housing group H^((3,4),(4,5)) = Ker(0,delta) / Img(delta*,delta),
/// where Ker(0,delta) = C^(3,4) x ker(delta on C^(4,5)).
pub fn h_deformation_3445(rep: &Representation) -> Result<CohomologyResult, TooLarge> {
    let (n, m) = (rep.algebra().dim(), rep.coeff_dim());
    let d34 = node34_dim(n, m);
    let d45 = CochainPair::space_dim(2, n, m);
    let ambient = d34 + d45;
    let delta2 = delta_level_matrix(rep, 2)?;
    let mut z_basis: Vec<Vec<Scalar>> = Vec::new();
    for j in 0..d34 {
        let mut v = unit(d34, j);
        v.extend(vec![Scalar::zero(); d45]);
        z_basis.push(v);
    }
    for k in delta2.kernel_basis() {
        let mut v = vec![Scalar::zero(); d34];
        v.extend(k);
        z_basis.push(v);
    }
    let z = Subspace::from_spanning(z_basis, ambient);
    let b = delta_star_delta_matrix(rep).column_space();
    Ok(CohomologyResult::new("3445", z, b))
}

/// H^(2p,2p+1) = ker(delta_p) / delta(C^(2p-2,2p-1)) for p >= 2.
pub fn h_general(rep: &Representation, p: usize) -> Result<CohomologyResult, TooLarge> {
    assert!(p >= 2, "the (2,3) node is h23's job; h_general starts at p = 2");
    let (n, m) = (rep.algebra().dim(), rep.coeff_dim());
    let ambient = CochainPair::space_dim(p, n, m);
    let out = delta_level_matrix(rep, p)?;
    let into = delta_level_matrix(rep, p - 1)?;
    let z = Subspace::from_spanning(out.kernel_basis(), ambient);
    let b = into.column_space();
    Ok(CohomologyResult::new(&format!("p={p}"), z, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieYamagutiAlgebra;
    use crate::linalg::int;

    #[test]
    fn delta_one_then_delta_is_zero_as_matrices() {
        for l in [
            LieYamagutiAlgebra::example_3dim(),
            LieYamagutiAlgebra::meson_field(2),
            LieYamagutiAlgebra::heisenberg(),
        ] {
            let rep = Representation::adjoint(&l);
            let d1 = delta_one_matrix(&rep);
            let d = delta_level_matrix(&rep, 1).unwrap();
            assert!(d.matmul(&d1).is_zero());
            let ds = delta_star_matrix(&rep);
            assert!(ds.matmul(&d1).is_zero());
        }
    }

    #[test]
    fn abelian_z23_matches_cyclic_sum_count() {
        // with all structure maps zero the only surviving condition is the
        // cyclic sum of g in delta*_I, so z = dim C^2 + nullity of that sum
        let l = LieYamagutiAlgebra::abelian(3);
        let rep = Representation::adjoint(&l);
        let (n, m) = (3, 3);
        let c3 = space_dim(n, m, 3, 1);
        let cyc = assemble(n * n * n * m, c3, |j| {
            let g = Cochain::from_canonical(n, m, 3, 1, &unit(c3, j));
            let mut col = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let mut s = g.value(&[a, b, c]).to_vec();
                        for (t, v) in s.iter_mut().zip(g.value(&[b, c, a])) {
                            *t += v;
                        }
                        for (t, v) in s.iter_mut().zip(g.value(&[c, a, b])) {
                            *t += v;
                        }
                        col.extend(s);
                    }
                }
            }
            col
        });
        let expected = space_dim(n, m, 2, 1) + (c3 - cyc.rank());
        assert_eq!(z23(&rep).dim(), expected);
    }

    #[test]
    fn abelian_coboundaries_vanish_and_classes_are_cocycles() {
        let l = LieYamagutiAlgebra::abelian(2);
        let rep = Representation::adjoint(&l);
        let h = h23(&rep).unwrap();
        assert_eq!(h.b_dim(), 0);
        assert_eq!(h.h_dim(), h.z_dim());
        assert!(h.h_dim() > 0);
        let first = h.representatives().remove(0);
        let class = h.class(&first).unwrap();
        assert!(class.iter().any(|c| !c.is_zero()));
        assert_eq!(h.class_is_trivial(&first), Some(false));
    }

    #[test]
    fn coboundaries_have_trivial_class() {
        let l = LieYamagutiAlgebra::example_3dim();
        let rep = Representation::adjoint(&l);
        let h = h23(&rep).unwrap();
        let d1 = delta_one_matrix(&rep);
        let mut f = vec![int(0); d1.cols()];
        f[0] = int(2);
        f[d1.cols() - 1] = int(-3);
        let image = d1.apply(&f);
        assert_eq!(h.class_is_trivial(&image), Some(true));
        let class = h.class(&image).unwrap();
        assert!(class.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn deformation_node_complex_closes() {
        for l in [LieYamagutiAlgebra::example_3dim(), LieYamagutiAlgebra::meson_field(2)] {
            let rep = Representation::adjoint(&l);
            let h = h_deformation_3445(&rep).unwrap();
            assert_eq!(h.z_dim() - h.b_dim(), h.h_dim());
        }
    }

    #[test]
    fn general_level_group_of_tiny_algebra() {
        let l = LieYamagutiAlgebra::meson_field(2);
        let rep = Representation::adjoint(&l);
        let h = h_general(&rep, 2).unwrap();
        assert_eq!(h.z_dim() - h.b_dim(), h.h_dim());
        assert_eq!(h.ambient_dim(), CochainPair::space_dim(2, 2, 2));
    }

    #[test]
    fn size_guard_fires() {
        let l = LieYamagutiAlgebra::abelian(6);
        let rep = Representation::adjoint(&l);
        assert!(h_general(&rep, 4).is_err());
    }
}
