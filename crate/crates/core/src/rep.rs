//! Representations (V; rho, D, theta) of a Lie-Yamaguti algebra and the six
//! compatibility relations tying them to the brackets.

use crate::algebra::{IdentityCheck, LieYamagutiAlgebra, Violation};
use crate::linalg::{Matrix, Scalar};
use num_traits::Zero;

/// A representation of an algebra on V = Q^coeff_dim: a linear map rho and
/// bilinear maps D, theta from the algebra into End(V), all stored as one
/// endomorphism matrix per basis tuple.
#[derive(Clone, Debug)]
pub struct Representation {
    algebra: LieYamagutiAlgebra,
    coeff_dim: usize,
    rho: Vec<Matrix>,     // indexed by i
    d_map: Vec<Matrix>,   // indexed by i*n + j
    theta: Vec<Matrix>,   // indexed by i*n + j
}

/// Outcome of checking R1-R6 on every basis tuple. Residuals are flattened
/// m x m matrices (row-major), recorded only when nonzero.
#[derive(Clone, Debug)]
pub struct RepresentationReport {
    pub checks: Vec<IdentityCheck>,
}

impl RepresentationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name)
            .collect()
    }
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        out.extend_from_slice(m.row(r));
    }
    out
}

fn record(check: &mut IdentityCheck, args: &[usize], residual: &Matrix) {
    if !residual.is_zero() {
        check.violations.push(Violation {
            args: args.to_vec(),
            residual: flatten(residual),
        });
    }
}

impl Representation {
    pub fn new(
        algebra: LieYamagutiAlgebra,
        coeff_dim: usize,
        rho: Vec<Matrix>,
        d_map: Vec<Matrix>,
        theta: Vec<Matrix>,
    ) -> Representation {
        let n = algebra.dim();
        assert_eq!(rho.len(), n);
        assert_eq!(d_map.len(), n * n);
        assert_eq!(theta.len(), n * n);
        for m in rho.iter().chain(&d_map).chain(&theta) {
            assert_eq!((m.rows(), m.cols()), (coeff_dim, coeff_dim));
        }
        Representation {
            algebra,
            coeff_dim,
            rho,
            d_map,
            theta,
        }
    }

    /// The adjoint representation: V = L with rho(a)b = [a,b],
    /// D(a,b)c = {a,b,c}, theta(a,b)c = {c,a,b}.
    pub fn adjoint(algebra: &LieYamagutiAlgebra) -> Representation {
        let n = algebra.dim();
        let mut rho = Vec::with_capacity(n);
        for i in 0..n {
            rho.push(Matrix::from_fn(n, n, |t, j| {
                algebra.bracket_basis(i, j)[t].clone()
            }));
        }
        let mut d_map = Vec::with_capacity(n * n);
        let mut theta = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                d_map.push(Matrix::from_fn(n, n, |t, k| {
                    algebra.triple_basis(i, j, k)[t].clone()
                }));
                theta.push(Matrix::from_fn(n, n, |t, k| {
                    algebra.triple_basis(k, i, j)[t].clone()
                }));
            }
        }
        Representation {
            algebra: algebra.clone(),
            coeff_dim: n,
            rho,
            d_map,
            theta,
        }
    }

    pub fn algebra(&self) -> &LieYamagutiAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn coeff_dim(&self) -> usize {
        self.coeff_dim
    }

    pub fn rho(&self, i: usize) -> &Matrix {
        &self.rho[i]
    }

    pub fn d(&self, i: usize, j: usize) -> &Matrix {
        &self.d_map[i * self.algebra.dim() + j]
    }

    pub fn theta(&self, i: usize, j: usize) -> &Matrix {
        &self.theta[i * self.algebra.dim() + j]
    }

    /// rho extended linearly to a vector argument.
    pub fn rho_vec(&self, a: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zero(self.coeff_dim, self.coeff_dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.rho[i].scale(c));
            }
        }
        acc
    }

    /// theta with a vector in the chosen slot (0 or 1), basis index in the
    /// other.
    pub fn theta_vec(&self, slot: usize, fixed: usize, v: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zero(self.coeff_dim, self.coeff_dim);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let m = if slot == 0 { self.theta(i, fixed) } else { self.theta(fixed, i) };
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// D with a vector in the chosen slot.
    pub fn d_vec(&self, slot: usize, fixed: usize, v: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zero(self.coeff_dim, self.coeff_dim);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let m = if slot == 0 { self.d(i, fixed) } else { self.d(fixed, i) };
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }

    /// Checks R1-R6 on all basis tuples.
    pub fn check_representation(&self) -> RepresentationReport {
        let n = self.algebra.dim();
        let mut r1 = IdentityCheck { name: "R1", violations: vec![] };
        let mut r2 = IdentityCheck { name: "R2", violations: vec![] };
        let mut r3 = IdentityCheck { name: "R3", violations: vec![] };
        let mut r4 = IdentityCheck { name: "R4", violations: vec![] };
        let mut r5 = IdentityCheck { name: "R5", violations: vec![] };
        let mut r6 = IdentityCheck { name: "R6", violations: vec![] };

        // R1: D(a,b) + theta(a,b) - theta(b,a) = [rho(a),rho(b)] - rho([a,b])
        for a in 0..n {
            for b in 0..n {
                let lhs = self.d(a, b).add(self.theta(a, b)).sub(self.theta(b, a));
                let rhs = self.rho(a)
                    .commutator(self.rho(b))
                    .sub(&self.rho_vec(self.algebra.bracket_basis(a, b)));
                record(&mut r1, &[a, b], &lhs.sub(&rhs));
            }
        }

        // R2: theta(a,[b,c]) - rho(b) theta(a,c) + rho(c) theta(a,b) = 0
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let res = self
                        .theta_vec(1, a, self.algebra.bracket_basis(b, c))
                        .sub(&self.rho(b).matmul(self.theta(a, c)))
                        .add(&self.rho(c).matmul(self.theta(a, b)));
                    record(&mut r2, &[a, b, c], &res);
                }
            }
        }

        // R3: theta([a,b],c) - theta(a,c) rho(b) + theta(b,c) rho(a) = 0
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let res = self
                        .theta_vec(0, c, self.algebra.bracket_basis(a, b))
                        .sub(&self.theta(a, c).matmul(self.rho(b)))
                        .add(&self.theta(b, c).matmul(self.rho(a)));
                    record(&mut r3, &[a, b, c], &res);
                }
            }
        }

        // R4: theta(c,d) theta(a,b) - theta(b,d) theta(a,c)
        //     - theta(a,{b,c,d}) + D(b,c) theta(a,d) = 0
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let res = self
                            .theta(c, d)
                            .matmul(self.theta(a, b))
                            .sub(&self.theta(b, d).matmul(self.theta(a, c)))
                            .sub(&self.theta_vec(1, a, self.algebra.triple_basis(b, c, d)))
                            .add(&self.d(b, c).matmul(self.theta(a, d)));
                        record(&mut r4, &[a, b, c, d], &res);
                    }
                }
            }
        }

        // R5: [D(a,b), rho(c)] = rho({a,b,c})
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let res = self
                        .d(a, b)
                        .commutator(self.rho(c))
                        .sub(&self.rho_vec(self.algebra.triple_basis(a, b, c)));
                    record(&mut r5, &[a, b, c], &res);
                }
            }
        }

        // R6: [D(a,b), theta(c,d)] = theta({a,b,c},d) + theta(c,{a,b,d})
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let res = self
                            .d(a, b)
                            .commutator(self.theta(c, d))
                            .sub(&self.theta_vec(0, d, self.algebra.triple_basis(a, b, c)))
                            .sub(&self.theta_vec(1, c, self.algebra.triple_basis(a, b, d)));
                        record(&mut r6, &[a, b, c, d], &res);
                    }
                }
            }
        }

        RepresentationReport {
            checks: vec![r1, r2, r3, r4, r5, r6],
        }
    }

    /// The derived relation D([a,b],c) + D([b,c],a) + D([c,a],b) = 0,
    /// a consequence of R1, R2, R3 and R5. Checked separately because it is
    /// a useful smoke test for the adjoint wiring.
    pub fn check_derived_d_identity(&self) -> IdentityCheck {
        let n = self.algebra.dim();
        let mut check = IdentityCheck { name: "D-cyclic", violations: vec![] };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let res = self
                        .d_vec(0, c, self.algebra.bracket_basis(a, b))
                        .add(&self.d_vec(0, a, self.algebra.bracket_basis(b, c)))
                        .add(&self.d_vec(0, b, self.algebra.bracket_basis(c, a)));
                    record(&mut check, &[a, b, c], &res);
                }
            }
        }
        check
    }
}
