//! Lie-Yamaguti algebras: a bilinear bracket [.,.] and a trilinear bracket
//! {.,.,.} on a finite-dimensional space, subject to axioms LY1-LY6.
//!
//! Structure constants are stored dense and unconstrained; `check_axioms`
//! verifies the laws rather than the constructors enforcing them, so invalid
//! input is representable and reportable.

use crate::cochain::Cochain;
use crate::linalg::{Scalar, Subspace};
use num_traits::Zero;
use thiserror::Error;

/// Finite-dimensional algebra with binary and ternary structure constants.
///
/// `binary.value(&[i,j])` holds the coordinates of [e_i, e_j]; the ternary
/// tensor works the same way with three indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieYamagutiAlgebra {
    dim: usize,
    basis: Vec<String>,
    binary: Cochain,
    ternary: Cochain,
}

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("binary product not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails at ({0}, {1}, {2})")]
    JacobiFails(usize, usize, usize),
    #[error("Leibniz identity fails at ({0}, {1}, {2})")]
    LeibnizFails(usize, usize, usize),
    #[error("subspaces do not decompose the ambient algebra (dims {h} + {m} != {ambient})")]
    NotADecomposition { h: usize, m: usize, ambient: usize },
    #[error("subspace sum is not direct")]
    NotDirect,
    #[error("<h,h> leaves h at basis pair ({0}, {1})")]
    HNotClosed(usize, usize),
    #[error("<h,m> leaves m at basis pair ({0}, {1})")]
    MNotPreserved(usize, usize),
}

/// One failing instance of an identity: the basis tuple and the nonzero
/// left-minus-right residual in coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub args: Vec<usize>,
    pub residual: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub violations: Vec<Violation>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Outcome of checking LY1-LY6 on every basis tuple.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub checks: Vec<IdentityCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    /// Names of the failing identities, in axiom order.
    pub fn failing(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name)
            .collect()
    }
}

fn record(check: &mut IdentityCheck, args: &[usize], residual: Vec<Scalar>) {
    if residual.iter().any(|x| !x.is_zero()) {
        check.violations.push(Violation {
            args: args.to_vec(),
            residual,
        });
    }
}

fn add_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x;
        }
    }
}

fn sub_into(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a -= x;
        }
    }
}

impl LieYamagutiAlgebra {
    /// Zero brackets on an n-dimensional space: the abelian algebra.
    pub fn abelian(n: usize) -> LieYamagutiAlgebra {
        LieYamagutiAlgebra {
            dim: n,
            basis: (1..=n).map(|i| format!("e{i}")).collect(),
            binary: Cochain::zero(2, n, n),
            ternary: Cochain::zero(3, n, n),
        }
    }

    /// Assembles an algebra from raw structure constant tensors.
    pub fn from_tensors(
        basis: Vec<String>,
        binary: Cochain,
        ternary: Cochain,
    ) -> LieYamagutiAlgebra {
        let n = basis.len();
        assert_eq!(binary.arity(), 2);
        assert_eq!(ternary.arity(), 3);
        assert_eq!(binary.dim(), n);
        assert_eq!(binary.coeff_dim(), n);
        assert_eq!(ternary.dim(), n);
        assert_eq!(ternary.coeff_dim(), n);
        LieYamagutiAlgebra {
            dim: n,
            basis,
            binary,
            ternary,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn set_basis_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.dim);
        self.basis = names;
    }

    pub fn binary(&self) -> &Cochain {
        &self.binary
    }

    pub fn ternary(&self) -> &Cochain {
        &self.ternary
    }

    /// Sets [e_i, e_j] = sum coeffs and [e_j, e_i] to its negative.
    /// Construction convenience only; nothing stops later edits from breaking
    /// antisymmetry, which is what check_axioms is for.
    pub fn set_bracket(&mut self, i: usize, j: usize, coeffs: &[(usize, Scalar)]) {
        for &(k, ref v) in coeffs {
            self.binary.set_entry(&[i, j], k, v.clone());
            if i != j {
                self.binary.set_entry(&[j, i], k, -v.clone());
            }
        }
    }

    /// Sets {e_i, e_j, e_k} = sum coeffs and the (j, i, k) entry to its
    /// negative.
    pub fn set_triple(&mut self, i: usize, j: usize, k: usize, coeffs: &[(usize, Scalar)]) {
        for &(l, ref v) in coeffs {
            self.ternary.set_entry(&[i, j, k], l, v.clone());
            if i != j {
                self.ternary.set_entry(&[j, i, k], l, -v.clone());
            }
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        self.binary.value(&[i, j])
    }

    pub fn triple_basis(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        self.ternary.value(&[i, j, k])
    }

    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.binary.apply_vectors(&[a, b])
    }

    pub fn triple(&self, a: &[Scalar], b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
        self.ternary.apply_vectors(&[a, b, c])
    }

    /// Checks LY1 through LY6 on every basis tuple and reports all failures.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim;
        let mut ly1 = IdentityCheck { name: "LY1", violations: vec![] };
        let mut ly2 = IdentityCheck { name: "LY2", violations: vec![] };
        let mut ly3 = IdentityCheck { name: "LY3", violations: vec![] };
        let mut ly4 = IdentityCheck { name: "LY4", violations: vec![] };
        let mut ly5 = IdentityCheck { name: "LY5", violations: vec![] };
        let mut ly6 = IdentityCheck { name: "LY6", violations: vec![] };

        // LY1: [a,a] = 0 and antisymmetry.
        for i in 0..n {
            record(&mut ly1, &[i, i], self.bracket_basis(i, i).to_vec());
            for j in i + 1..n {
                let mut r = self.bracket_basis(i, j).to_vec();
                add_into(&mut r, self.bracket_basis(j, i));
                record(&mut ly1, &[i, j], r);
            }
        }

        // LY2: {a,a,c} = 0 and antisymmetry in the first pair.
        for i in 0..n {
            for k in 0..n {
                record(&mut ly2, &[i, i, k], self.triple_basis(i, i, k).to_vec());
            }
            for j in i + 1..n {
                for k in 0..n {
                    let mut r = self.triple_basis(i, j, k).to_vec();
                    add_into(&mut r, self.triple_basis(j, i, k));
                    record(&mut ly2, &[i, j, k], r);
                }
            }
        }

        let cyc3 = |i: usize, j: usize, k: usize| [[i, j, k], [j, k, i], [k, i, j]];

        // LY3: sum_cyc ([[a,b],c] + {a,b,c}) = 0.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = vec![Scalar::zero(); n];
                    for [a, b, c] in cyc3(i, j, k) {
                        let inner = self.bracket_basis(a, b);
                        add_into(&mut r, &self.binary.apply_mixed(&[0, c], 0, inner));
                        add_into(&mut r, self.triple_basis(a, b, c));
                    }
                    record(&mut ly3, &[i, j, k], r);
                }
            }
        }

        // LY4: sum_cyc {[a,b],c,d} = 0.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut r = vec![Scalar::zero(); n];
                        for [a, b, c] in cyc3(i, j, k) {
                            let inner = self.bracket_basis(a, b);
                            add_into(&mut r, &self.ternary.apply_mixed(&[0, c, l], 0, inner));
                        }
                        record(&mut ly4, &[i, j, k, l], r);
                    }
                }
            }
        }

        // LY5: {a,b,[c,d]} = [{a,b,c},d] + [c,{a,b,d}].
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut r = self.ternary.apply_mixed(&[i, j, 0], 2, self.bracket_basis(k, l));
                        sub_into(&mut r, &self.binary.apply_mixed(&[0, l], 0, self.triple_basis(i, j, k)));
                        sub_into(&mut r, &self.binary.apply_mixed(&[k, 0], 1, self.triple_basis(i, j, l)));
                        record(&mut ly5, &[i, j, k, l], r);
                    }
                }
            }
        }

        // LY6: {a,b,{c,d,e}} = {{a,b,c},d,e} + {c,{a,b,d},e} + {c,d,{a,b,e}}.
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        for e in 0..n {
                            let mut r =
                                self.ternary.apply_mixed(&[i, j, 0], 2, self.triple_basis(k, l, e));
                            sub_into(&mut r, &self.ternary.apply_mixed(&[0, l, e], 0, self.triple_basis(i, j, k)));
                            sub_into(&mut r, &self.ternary.apply_mixed(&[k, 0, e], 1, self.triple_basis(i, j, l)));
                            sub_into(&mut r, &self.ternary.apply_mixed(&[k, l, 0], 2, self.triple_basis(i, j, e)));
                            record(&mut ly6, &[i, j, k, l, e], r);
                        }
                    }
                }
            }
        }

        AxiomReport {
            checks: vec![ly1, ly2, ly3, ly4, ly5, ly6],
        }
    }

    /// Lie algebra as a Lie-Yamaguti algebra: keeps the bracket and derives
    /// {a,b,c} = [[a,b],c]. The input bracket is validated (antisymmetry and
    /// Jacobi) before use.
    pub fn from_lie_algebra(
        basis: Vec<String>,
        bracket: Cochain,
    ) -> Result<LieYamagutiAlgebra, ConstructError> {
        let n = basis.len();
        assert_eq!((bracket.arity(), bracket.dim(), bracket.coeff_dim()), (2, n, n));
        for i in 0..n {
            for j in i..n {
                let mut r = bracket.value(&[i, j]).to_vec();
                if i != j {
                    add_into(&mut r, bracket.value(&[j, i]));
                }
                if r.iter().any(|x| !x.is_zero()) {
                    return Err(ConstructError::NotAntisymmetric(i, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut r = vec![Scalar::zero(); n];
                    for [a, b, c] in [[i, j, k], [j, k, i], [k, i, j]] {
                        add_into(&mut r, &bracket.apply_mixed(&[0, c], 0, bracket.value(&[a, b])));
                    }
                    if r.iter().any(|x| !x.is_zero()) {
                        return Err(ConstructError::JacobiFails(i, j, k));
                    }
                }
            }
        }
        let mut ternary = Cochain::zero(3, n, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = bracket.apply_mixed(&[0, k], 0, bracket.value(&[i, j]));
                    for (t, x) in v.iter().enumerate() {
                        if !x.is_zero() {
                            ternary.set_entry(&[i, j, k], t, x.clone());
                        }
                    }
                }
            }
        }
        Ok(LieYamagutiAlgebra {
            dim: n,
            basis,
            binary: bracket,
            ternary,
        })
    }

    /// Leibniz algebra (left Leibniz identity x.(y.z) = (x.y).z + y.(x.z))
    /// as a Lie-Yamaguti algebra: [a,b] = a.b - b.a, {a,b,c} = -(a.b).c.
    pub fn from_leibniz(
        basis: Vec<String>,
        product: Cochain,
    ) -> Result<LieYamagutiAlgebra, ConstructError> {
        let n = basis.len();
        assert_eq!((product.arity(), product.dim(), product.coeff_dim()), (2, n, n));
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut r = product.apply_mixed(&[x, 0], 1, product.value(&[y, z]));
                    sub_into(&mut r, &product.apply_mixed(&[0, z], 0, product.value(&[x, y])));
                    sub_into(&mut r, &product.apply_mixed(&[y, 0], 1, product.value(&[x, z])));
                    if r.iter().any(|v| !v.is_zero()) {
                        return Err(ConstructError::LeibnizFails(x, y, z));
                    }
                }
            }
        }
        let mut binary = Cochain::zero(2, n, n);
        let mut ternary = Cochain::zero(3, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut v = product.value(&[i, j]).to_vec();
                sub_into(&mut v, product.value(&[j, i]));
                for (t, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        binary.set_entry(&[i, j], t, x.clone());
                    }
                }
                for k in 0..n {
                    let w = product.apply_mixed(&[0, k], 0, product.value(&[i, j]));
                    for (t, x) in w.iter().enumerate() {
                        if !x.is_zero() {
                            ternary.set_entry(&[i, j, k], t, -x.clone());
                        }
                    }
                }
            }
        }
        Ok(LieYamagutiAlgebra {
            dim: n,
            basis,
            binary,
            ternary,
        })
    }

    /// Reductive-pair construction. `bracket` is a Lie bracket on the ambient
    /// space, `h` and `m` subspaces with g = h (+) m, <h,h> in h, <h,m> in m.
    /// The result lives on m (in the coordinates of m's canonical basis) with
    /// [a,b] = pi_m<a,b> and {a,b,c} = <pi_h<a,b>, c>.
    pub fn from_reductive_pair(
        bracket: &Cochain,
        h: &Subspace,
        m: &Subspace,
    ) -> Result<LieYamagutiAlgebra, ConstructError> {
        let ng = bracket.dim();
        assert_eq!((bracket.arity(), bracket.coeff_dim()), (2, ng));
        if h.ambient() != ng || m.ambient() != ng || h.dim() + m.dim() != ng {
            return Err(ConstructError::NotADecomposition {
                h: h.dim(),
                m: m.dim(),
                ambient: ng,
            });
        }
        let hk = h.dim();
        let n = m.dim();
        // columns: h basis then m basis; invertibility = directness
        let mut cols: Vec<Vec<Scalar>> = h.basis_rows();
        cols.extend(m.basis_rows());
        let p = crate::linalg::Matrix::from_rows(cols).transpose();
        if p.rank() != ng {
            return Err(ConstructError::NotDirect);
        }
        let coords = |v: &[Scalar]| -> Vec<Scalar> {
            p.solve(v).expect("decomposition is direct, so coordinates exist")
        };
        let hb = h.basis_rows();
        let mb = m.basis_rows();
        let lie = |a: &[Scalar], b: &[Scalar]| bracket.apply_vectors(&[a, b]);
        for i in 0..hk {
            for j in 0..hk {
                if !h.contains(&lie(&hb[i], &hb[j])) {
                    return Err(ConstructError::HNotClosed(i, j));
                }
            }
            for j in 0..n {
                if !m.contains(&lie(&hb[i], &mb[j])) {
                    return Err(ConstructError::MNotPreserved(i, j));
                }
            }
        }
        let mut binary = Cochain::zero(2, n, n);
        let mut ternary = Cochain::zero(3, n, n);
        for i in 0..n {
            for j in 0..n {
                let w = lie(&mb[i], &mb[j]);
                let x = coords(&w);
                for t in 0..n {
                    if !x[hk + t].is_zero() {
                        binary.set_entry(&[i, j], t, x[hk + t].clone());
                    }
                }
                // h-part of <m_i, m_j> back in ambient coordinates
                let mut hpart = vec![Scalar::zero(); ng];
                for (a, coef) in x[..hk].iter().enumerate() {
                    if !coef.is_zero() {
                        for c in 0..ng {
                            if !hb[a][c].is_zero() {
                                hpart[c] += coef * &hb[a][c];
                            }
                        }
                    }
                }
                for k in 0..n {
                    let w2 = lie(&hpart, &mb[k]);
                    let y = coords(&w2);
                    debug_assert!(y[..hk].iter().all(Zero::is_zero), "<h,m> escaped m");
                    for t in 0..n {
                        if !y[hk + t].is_zero() {
                            ternary.set_entry(&[i, j, k], t, y[hk + t].clone());
                        }
                    }
                }
            }
        }
        Ok(LieYamagutiAlgebra {
            dim: n,
            basis: (1..=n).map(|i| format!("m{i}")).collect(),
            binary,
            ternary,
        })
    }

    /// The meson field algebra: zero binary bracket and
    /// {G_i, G_j, G_k} = delta_ki G_j - delta_kj G_i.
    pub fn meson_field(n: usize) -> LieYamagutiAlgebra {
        let mut ternary = Cochain::zero(3, n, n);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                // k = i contributes +G_j, k = j contributes -G_i
                ternary.set_entry(&[i, j, i], j, crate::linalg::int(1));
                ternary.set_entry(&[i, j, j], i, crate::linalg::int(-1));
            }
        }
        LieYamagutiAlgebra {
            dim: n,
            basis: (1..=n).map(|i| format!("G{i}")).collect(),
            binary: Cochain::zero(2, n, n),
            ternary,
        }
    }

    /// Three-dimensional algebra with [e1,e2] = e3 and {e1,e2,e1} = e3.
    pub fn example_3dim() -> LieYamagutiAlgebra {
        let mut l = LieYamagutiAlgebra::abelian(3);
        l.set_bracket(0, 1, &[(2, crate::linalg::int(1))]);
        l.set_triple(0, 1, 0, &[(2, crate::linalg::int(1))]);
        l
    }

    /// Heisenberg Lie algebra ([e1,e2] = e3, center e3) viewed as a
    /// Lie-Yamaguti algebra; the derived ternary bracket vanishes.
    pub fn heisenberg() -> LieYamagutiAlgebra {
        let mut bracket = Cochain::zero(2, 3, 3);
        bracket.set_entry(&[0, 1], 2, crate::linalg::int(1));
        bracket.set_entry(&[1, 0], 2, crate::linalg::int(-1));
        let basis = vec!["e1".into(), "e2".into(), "e3".into()];
        LieYamagutiAlgebra::from_lie_algebra(basis, bracket).expect("heisenberg is a Lie algebra")
    }

    /// Componentwise brackets on the direct sum.
    pub fn direct_sum(a: &LieYamagutiAlgebra, b: &LieYamagutiAlgebra) -> LieYamagutiAlgebra {
        let n = a.dim + b.dim;
        let mut binary = Cochain::zero(2, n, n);
        let mut ternary = Cochain::zero(3, n, n);
        let shift = a.dim;
        for i in 0..a.dim {
            for j in 0..a.dim {
                for (t, x) in a.bracket_basis(i, j).iter().enumerate() {
                    if !x.is_zero() {
                        binary.set_entry(&[i, j], t, x.clone());
                    }
                }
                for k in 0..a.dim {
                    for (t, x) in a.triple_basis(i, j, k).iter().enumerate() {
                        if !x.is_zero() {
                            ternary.set_entry(&[i, j, k], t, x.clone());
                        }
                    }
                }
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                for (t, x) in b.bracket_basis(i, j).iter().enumerate() {
                    if !x.is_zero() {
                        binary.set_entry(&[shift + i, shift + j], shift + t, x.clone());
                    }
                }
                for k in 0..b.dim {
                    for (t, x) in b.triple_basis(i, j, k).iter().enumerate() {
                        if !x.is_zero() {
                            ternary.set_entry(&[shift + i, shift + j, shift + k], shift + t, x.clone());
                        }
                    }
                }
            }
        }
        let mut basis = a.basis.clone();
        basis.extend(b.basis.iter().cloned());
        LieYamagutiAlgebra {
            dim: n,
            basis,
            binary,
            ternary,
        }
    }
}
