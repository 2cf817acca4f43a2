//! Fixture algebras and seeded random generators for the test suites.
//!
//! Everything here is deterministic given the seed; generators draw small
//! integer coefficients so exact arithmetic stays cheap.

use crate::algebra::LieYamagutiAlgebra;
use crate::cochain::{Cochain, CochainPair};
use crate::cohomology::z23;
use crate::deform::{extend_one_order, Extension, FormalIsomorphism, TruncatedDeformation};
use crate::linalg::{int, Matrix, Scalar, Subspace};
use crate::rep::Representation;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct CatalogEntry {
    pub name: &'static str,
    pub algebra: LieYamagutiAlgebra,
}

/// The 2-dimensional tangent algebra of the sphere: so(3) split along its
/// L3 axis, with m spanned by L1 and L2. Its tensors coincide with
/// meson_field(2).
pub fn reductive_so3() -> LieYamagutiAlgebra {
    let mut bracket = Cochain::zero(2, 3, 3);
    // [L1,L2] = L3, [L2,L3] = L1, [L3,L1] = L2
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        bracket.set_entry(&[i, j], k, int(1));
        bracket.set_entry(&[j, i], k, int(-1));
    }
    let basis = |rows: &[usize]| {
        let vectors = rows
            .iter()
            .map(|&r| {
                let mut v = vec![Scalar::zero(); 3];
                v[r] = int(1);
                v
            })
            .collect::<Vec<_>>();
        Subspace::from_spanning(vectors, 3)
    };
    let h = basis(&[2]);
    let m = basis(&[0, 1]);
    let mut l = LieYamagutiAlgebra::from_reductive_pair(&bracket, &h, &m)
        .expect("so(3) splits reductively along L3");
    l.set_basis_names(vec!["L1".into(), "L2".into()]);
    l
}

/// A non-example: symmetric binary product [e1,e1] = e2, which violates
/// the antisymmetry axiom and nothing else.
pub fn symmetric_bracket() -> LieYamagutiAlgebra {
    let mut binary = Cochain::zero(2, 2, 2);
    binary.set_entry(&[0, 0], 1, int(1));
    LieYamagutiAlgebra::from_tensors(
        vec!["e1".into(), "e2".into()],
        binary,
        Cochain::zero(3, 2, 2),
    )
}

/// Every named algebra the test suites sweep. All pass the axiom checks.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    let abelian_names: [&'static str; 4] = ["abelian-1", "abelian-2", "abelian-3", "abelian-4"];
    for (i, name) in abelian_names.into_iter().enumerate() {
        out.push(CatalogEntry { name, algebra: LieYamagutiAlgebra::abelian(i + 1) });
    }
    out.push(CatalogEntry { name: "example-3dim", algebra: LieYamagutiAlgebra::example_3dim() });
    let meson_names: [&'static str; 4] = ["meson-1", "meson-2", "meson-3", "meson-4"];
    for (i, name) in meson_names.into_iter().enumerate() {
        out.push(CatalogEntry { name, algebra: LieYamagutiAlgebra::meson_field(i + 1) });
    }
    out.push(CatalogEntry { name: "heisenberg", algebra: LieYamagutiAlgebra::heisenberg() });
    out.push(CatalogEntry { name: "reductive-so3", algebra: reductive_so3() });
    out
}

/// Catalog entries of dimension at most `max_dim`.
pub fn catalog_max_dim(max_dim: usize) -> Vec<CatalogEntry> {
    catalog().into_iter().filter(|e| e.algebra.dim() <= max_dim).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small integer scalar in [-3, 3].
pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    int(rng.gen_range(-3..=3))
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| random_scalar(rng)).collect()
}

/// A random invertible matrix: rejection on small integer entries, which
/// succeeds quickly at these dimensions.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| random_scalar(rng));
        if m.rank() == n {
            return m;
        }
    }
}

/// A random element of the (2,3)-cocycle space of the adjoint
/// representation; zero whenever that space is zero.
pub fn random_cocycle(rng: &mut ChaCha8Rng, rep: &Representation) -> CochainPair {
    let space = z23(rep);
    let n = rep.algebra().dim();
    let mut coords = vec![Scalar::zero(); CochainPair::space_dim(1, n, n)];
    for row in space.basis_rows() {
        let c = random_scalar(rng);
        if c.is_zero() {
            continue;
        }
        for (t, x) in row.iter().enumerate() {
            if !x.is_zero() {
                coords[t] += &c * x;
            }
        }
    }
    CochainPair::from_canonical(1, n, n, &coords)
}

/// A valid truncated deformation: a random infinitesimal integrated order
/// by order until `max_order` or the first obstruction. The result always
/// passes check_deformation; it is the identity deformation when the
/// cocycle space is zero.
pub fn random_deformation(
    rng: &mut ChaCha8Rng,
    algebra: &LieYamagutiAlgebra,
    max_order: usize,
) -> TruncatedDeformation {
    assert!(max_order >= 1);
    let rep = Representation::adjoint(algebra);
    let seed = random_cocycle(rng, &rep);
    let mut d = TruncatedDeformation::new(algebra, vec![seed]).expect("cocycle has valid shape");
    while d.order() < max_order {
        match extend_one_order(&d).expect("adjoint levels are supported") {
            Extension::Extended(next) => d = next,
            Extension::Obstructed(_) => break,
        }
    }
    d
}

/// A random formal isomorphism: identity plus small integer matrices at
/// orders 1..=order.
pub fn random_isomorphism(rng: &mut ChaCha8Rng, n: usize, order: usize) -> FormalIsomorphism {
    let terms = (0..order).map(|_| Matrix::from_fn(n, n, |_, _| random_scalar(rng))).collect();
    FormalIsomorphism::from_terms(n, terms)
}

/// A random Lie algebra of dimension 2 or 3: rejection sampling of sparse
/// antisymmetric brackets against the Jacobi identity, with a rotation
/// algebra fallback so the generator always yields something.
pub fn random_lie_bracket(rng: &mut ChaCha8Rng, n: usize) -> Cochain {
    assert!((2..=3).contains(&n));
    for _ in 0..200 {
        let mut bracket = Cochain::zero(2, n, n);
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    // sparse entries keep the Jacobi acceptance rate workable
                    let c = if rng.gen_range(0..3) == 0 { random_scalar(rng) } else { int(0) };
                    if !c.is_zero() {
                        bracket.set_entry(&[i, j], k, c.clone());
                        bracket.set_entry(&[j, i], k, -c);
                    }
                }
            }
        }
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        if LieYamagutiAlgebra::from_lie_algebra(names, bracket.clone()).is_ok() {
            return bracket;
        }
    }
    let mut bracket = Cochain::zero(2, n, n);
    if n == 3 {
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            bracket.set_entry(&[i, j], k, int(1));
            bracket.set_entry(&[j, i], k, int(-1));
        }
    } else {
        bracket.set_entry(&[0, 1], 0, int(1));
        bracket.set_entry(&[1, 0], 0, int(-1));
    }
    bracket
}

/// A random Leibniz product of dimension 2 or 3, by the same rejection
/// scheme against the left Leibniz identity.
pub fn random_leibniz_product(rng: &mut ChaCha8Rng, n: usize) -> Cochain {
    assert!((2..=3).contains(&n));
    let leibniz_holds = |p: &Cochain| -> bool {
        let prod = |a: usize, b: usize| p.value(&[a, b]).to_vec();
        let app = |v: &[Scalar], b: usize| {
            let mut out = vec![Scalar::zero(); n];
            for (a, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    for (t, x) in prod(a, b).iter().enumerate() {
                        out[t] += c * x;
                    }
                }
            }
            out
        };
        let app_right = |a: usize, v: &[Scalar]| {
            let mut out = vec![Scalar::zero(); n];
            for (b, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    for (t, x) in prod(a, b).iter().enumerate() {
                        out[t] += c * x;
                    }
                }
            }
            out
        };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    // x.(y.z) - (x.y).z - y.(x.z)
                    let lhs = app_right(x, &prod(y, z));
                    let r1 = app(&prod(x, y), z);
                    let r2 = app_right(y, &prod(x, z));
                    for t in 0..n {
                        if &lhs[t] - &r1[t] - &r2[t] != Scalar::zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    };
    for _ in 0..200 {
        let mut product = Cochain::zero(2, n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if rng.gen_range(0..4) == 0 {
                        let c = random_scalar(rng);
                        if !c.is_zero() {
                            product.set_entry(&[i, j], k, c);
                        }
                    }
                }
            }
        }
        if leibniz_holds(&product) {
            return product;
        }
    }
    // fallback: x.y = phi(x) y with phi the projection onto e1 acting by 0,
    // gives the trivial product, always Leibniz
    Cochain::zero(2, n, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deform::check_deformation;

    #[test]
    fn catalog_passes_axioms_and_the_counterexample_fails() {
        for entry in catalog() {
            let report = entry.algebra.check_axioms();
            assert!(report.passed(), "{} failed: {:?}", entry.name, report.failing());
        }
        let report = symmetric_bracket().check_axioms();
        assert!(!report.passed());
        assert!(report.failing().iter().any(|n| n.contains("LY1")), "{:?}", report.failing());
    }

    #[test]
    fn reductive_so3_matches_the_two_dim_meson_tensors() {
        let r = reductive_so3();
        let m = LieYamagutiAlgebra::meson_field(2);
        assert_eq!(r.binary(), m.binary());
        assert_eq!(r.ternary(), m.ternary());
    }

    #[test]
    fn random_deformations_validate() {
        let mut rng = rng(7);
        for entry in catalog_max_dim(3) {
            let d = random_deformation(&mut rng, &entry.algebra, 3);
            let report = check_deformation(&d);
            assert!(report.passed(), "{}: {:?}", entry.name, report.first_failure());
        }
    }

    #[test]
    fn random_structures_satisfy_their_laws() {
        let mut r = rng(11);
        for n in 2..=3 {
            for _ in 0..5 {
                let bracket = random_lie_bracket(&mut r, n);
                let names = (1..=n).map(|i| format!("e{i}")).collect();
                let l = LieYamagutiAlgebra::from_lie_algebra(names, bracket).unwrap();
                assert!(l.check_axioms().passed());
                let product = random_leibniz_product(&mut r, n);
                let names = (1..=n).map(|i| format!("e{i}")).collect();
                let l = LieYamagutiAlgebra::from_leibniz(names, product).unwrap();
                assert!(l.check_axioms().passed());
            }
        }
    }

    #[test]
    fn generators_are_reproducible() {
        let a = random_deformation(&mut rng(42), &LieYamagutiAlgebra::example_3dim(), 3);
        let b = random_deformation(&mut rng(42), &LieYamagutiAlgebra::example_3dim(), 3);
        assert_eq!(a, b);
        let c = random_invertible(&mut rng(5), 3);
        let d = random_invertible(&mut rng(5), 3);
        assert_eq!(c, d);
    }
}
