//! Truncated one-parameter formal deformations.
//!
//! A deformation of L is a pair of formal series F_t = sum F_i t^i,
//! G_t = sum G_i t^i with (F_0, G_0) the brackets of L, subject to six
//! equation families (de1)-(de6): pair-alternation of every term plus four
//! convolution identities whose t^0 parts are the algebra axioms. Everything
//! here is truncated at a finite order; "passes through order N" always
//! means the equations hold for every power of t up to t^N.
//!
//! The obstruction calculus: a deformation valid through order n yields
//! cochains (P, Q) in C^(3,4) and (R, S) in C^(4,5); the order-(n+1) term
//! exists iff the combined class vanishes in H^((3,4),(4,5)), and then it is
//! any solution of delta*(F,G) = -(P,Q), delta(F,G) = -(R,S).

use crate::algebra::{AxiomReport, IdentityCheck, LieYamagutiAlgebra, Violation};
use crate::coboundary::{delta_pair_canonical, delta_star_canonical};
use crate::cochain::{Cochain, CochainPair};
use crate::cohomology::{delta_one_matrix, delta_star_delta_matrix, h_deformation_3445};
use crate::linalg::{Matrix, Scalar};
use crate::rep::Representation;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DeformError {
    #[error("term at order {order} has the wrong shape: {what}")]
    ShapeMismatch { order: usize, what: String },
    #[error("deformation equations fail first at order {order} ({equation})")]
    InvalidDeformation { order: usize, equation: &'static str },
    #[error("the pair is not a (2,3)-cocycle")]
    NotACocycle,
    #[error("deformations live over different base algebras")]
    DifferentBaseAlgebra,
    #[error("circle products exist at levels (1,1), (1,2) and (2,1), not ({0},{1})")]
    UnsupportedLevels(usize, usize),
}

/// F_t, G_t truncated at a fixed order. `terms[i]` is the coefficient of
/// t^i; index 0 always holds the base algebra's own brackets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedDeformation {
    algebra: LieYamagutiAlgebra,
    terms: Vec<CochainPair>,
}

fn check_term_shape(order: usize, n: usize, t: &CochainPair) -> Result<(), DeformError> {
    let shape = |what: &str| DeformError::ShapeMismatch { order, what: what.to_string() };
    if t.f.arity() != 2 || t.g.arity() != 3 {
        return Err(shape("arities must be (2, 3)"));
    }
    if t.dim() != n || t.coeff_dim() != n {
        return Err(shape("terms must map the algebra to itself"));
    }
    if !t.f.is_pair_alternating() || !t.g.is_pair_alternating() {
        return Err(shape("terms must alternate in their first two slots"));
    }
    Ok(())
}

impl TruncatedDeformation {
    /// The identity deformation: no change at any order.
    pub fn identity(algebra: &LieYamagutiAlgebra, order: usize) -> TruncatedDeformation {
        let n = algebra.dim();
        let mut terms = vec![CochainPair {
            f: algebra.binary().clone(),
            g: algebra.ternary().clone(),
        }];
        terms.resize(order + 1, CochainPair::zero(1, n, n));
        TruncatedDeformation { algebra: algebra.clone(), terms }
    }

    /// Deformation with the given coefficients of t^1, t^2, ... Shapes and
    /// pair-alternation ((de1)/(de2)) are enforced; the convolution
    /// equations are `check_deformation`'s job.
    pub fn new(
        algebra: &LieYamagutiAlgebra,
        higher: Vec<CochainPair>,
    ) -> Result<TruncatedDeformation, DeformError> {
        let mut d = TruncatedDeformation::identity(algebra, 0);
        for (k, t) in higher.into_iter().enumerate() {
            check_term_shape(k + 1, algebra.dim(), &t)?;
            d.terms.push(t);
        }
        Ok(d)
    }

    pub fn algebra(&self) -> &LieYamagutiAlgebra {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, i: usize) -> &CochainPair {
        &self.terms[i]
    }

    pub fn terms(&self) -> &[CochainPair] {
        &self.terms
    }

    /// Appends the next coefficient, making this an order+1 deformation.
    pub fn push_term(&mut self, t: CochainPair) -> Result<(), DeformError> {
        check_term_shape(self.order() + 1, self.algebra.dim(), &t)?;
        self.terms.push(t);
        Ok(())
    }

    /// (F_1, G_1). Panics below order one.
    pub fn infinitesimal(&self) -> &CochainPair {
        assert!(self.order() >= 1, "order-zero deformation has no infinitesimal");
        &self.terms[1]
    }

    /// The least n >= 1 with (F_n, G_n) nonzero, or None when every term
    /// above order zero vanishes.
    pub fn n_infinitesimal(&self) -> Option<(usize, &CochainPair)> {
        self.terms
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, t)| !t.is_zero())
            .map(|(i, t)| (i, t))
    }
}

fn cyc(a: usize, b: usize, c: usize) -> [(usize, usize, usize); 3] {
    [(a, b, c), (b, c, a), (c, a, b)]
}

fn add(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x;
        }
    }
}

fn sub(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a -= x;
        }
    }
}

// The four convolution sums shared by the deformation equations and the
// obstruction cochains; `orders` lists the (i, j) pairs to convolve.

fn de3_sum(d: &TruncatedDeformation, orders: &[(usize, usize)], a: usize, b: usize, c: usize) -> Vec<Scalar> {
    let mut r = vec![Scalar::zero(); d.algebra.dim()];
    for &(i, j) in orders {
        let (fi, fj) = (&d.terms[i].f, &d.terms[j].f);
        for (x, y, z) in cyc(a, b, c) {
            add(&mut r, &fi.apply_mixed(&[0, z], 0, fj.value(&[x, y])));
        }
    }
    r
}

fn de4_sum(
    d: &TruncatedDeformation,
    orders: &[(usize, usize)],
    a: usize,
    b: usize,
    c: usize,
    u: usize,
) -> Vec<Scalar> {
    let mut r = vec![Scalar::zero(); d.algebra.dim()];
    for &(i, j) in orders {
        let (gi, fj) = (&d.terms[i].g, &d.terms[j].f);
        for (x, y, z) in cyc(a, b, c) {
            add(&mut r, &gi.apply_mixed(&[0, z, u], 0, fj.value(&[x, y])));
        }
    }
    r
}

fn de5_sum(
    d: &TruncatedDeformation,
    orders: &[(usize, usize)],
    a: usize,
    b: usize,
    c: usize,
    u: usize,
) -> Vec<Scalar> {
    let mut r = vec![Scalar::zero(); d.algebra.dim()];
    for &(i, j) in orders {
        let (fi, gi) = (&d.terms[i].f, &d.terms[i].g);
        let (fj, gj) = (&d.terms[j].f, &d.terms[j].g);
        add(&mut r, &gi.apply_mixed(&[a, b, 0], 2, fj.value(&[c, u])));
        sub(&mut r, &fi.apply_mixed(&[0, u], 0, gj.value(&[a, b, c])));
        sub(&mut r, &fi.apply_mixed(&[c, 0], 1, gj.value(&[a, b, u])));
    }
    r
}

fn de6_sum(
    d: &TruncatedDeformation,
    orders: &[(usize, usize)],
    a: usize,
    b: usize,
    c: usize,
    u: usize,
    v: usize,
) -> Vec<Scalar> {
    let mut r = vec![Scalar::zero(); d.algebra.dim()];
    for &(i, j) in orders {
        let gi = &d.terms[i].g;
        let gj = &d.terms[j].g;
        add(&mut r, &gi.apply_mixed(&[a, b, 0], 2, gj.value(&[c, u, v])));
        sub(&mut r, &gi.apply_mixed(&[0, u, v], 0, gj.value(&[a, b, c])));
        sub(&mut r, &gi.apply_mixed(&[c, 0, v], 1, gj.value(&[a, b, u])));
        sub(&mut r, &gi.apply_mixed(&[c, u, 0], 2, gj.value(&[a, b, v])));
    }
    r
}

fn full_orders(nu: usize) -> Vec<(usize, usize)> {
    (0..=nu).map(|i| (i, nu - i)).collect()
}

fn interior_orders(nu: usize) -> Vec<(usize, usize)> {
    (1..nu).map(|i| (i, nu - i)).collect()
}

fn alternation_check(name: &'static str, c: &Cochain) -> IdentityCheck {
    let mut check = IdentityCheck { name, violations: Vec::new() };
    let n = c.dim();
    let free = c.arity() - 2;
    let mut tail = vec![0usize; free];
    loop {
        for a in 0..n {
            let mut t = vec![a, a];
            t.extend_from_slice(&tail);
            let v = c.value(&t);
            if v.iter().any(|x| !x.is_zero()) {
                check.violations.push(Violation { args: t, residual: v.to_vec() });
            }
            for b in a + 1..n {
                let mut t1 = vec![a, b];
                t1.extend_from_slice(&tail);
                let mut t2 = vec![b, a];
                t2.extend_from_slice(&tail);
                let mut r = c.value(&t1).to_vec();
                add(&mut r, c.value(&t2));
                if r.iter().any(|x| !x.is_zero()) {
                    check.violations.push(Violation { args: t1, residual: r });
                }
            }
        }
        let mut slot = free;
        loop {
            if slot == 0 {
                return check;
            }
            slot -= 1;
            tail[slot] += 1;
            if tail[slot] < n {
                break;
            }
            tail[slot] = 0;
        }
    }
}

/// Per-order result of the six deformation equation families.
#[derive(Debug, Clone)]
pub struct OrderReport {
    pub order: usize,
    pub checks: Vec<IdentityCheck>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

#[derive(Debug, Clone)]
pub struct DeformationReport {
    pub orders: Vec<OrderReport>,
}

impl DeformationReport {
    pub fn passed(&self) -> bool {
        self.orders.iter().all(OrderReport::passed)
    }

    /// First (order, equation) that fails, if any.
    pub fn first_failure(&self) -> Option<(usize, &'static str)> {
        for o in &self.orders {
            for c in &o.checks {
                if !c.passed() {
                    return Some((o.order, c.name));
                }
            }
        }
        None
    }
}

/// Evaluates (de1)-(de6) at every order nu <= N on all basis tuples.
/// Order-zero failures mean the base algebra itself is not Lie-Yamaguti.
pub fn check_deformation(d: &TruncatedDeformation) -> DeformationReport {
    let n = d.algebra.dim();
    let mut orders = Vec::with_capacity(d.order() + 1);
    for nu in 0..=d.order() {
        let pairs = full_orders(nu);
        let mut de3 = IdentityCheck { name: "de3", violations: Vec::new() };
        let mut de4 = IdentityCheck { name: "de4", violations: Vec::new() };
        let mut de5 = IdentityCheck { name: "de5", violations: Vec::new() };
        let mut de6 = IdentityCheck { name: "de6", violations: Vec::new() };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut r = de3_sum(d, &pairs, a, b, c);
                    for (x, y, z) in cyc(a, b, c) {
                        add(&mut r, d.terms[nu].g.value(&[x, y, z]));
                    }
                    record(&mut de3, &[a, b, c], r);
                    for u in 0..n {
                        record(&mut de4, &[a, b, c, u], de4_sum(d, &pairs, a, b, c, u));
                        record(&mut de5, &[a, b, c, u], de5_sum(d, &pairs, a, b, c, u));
                        for v in 0..n {
                            record(&mut de6, &[a, b, c, u, v], de6_sum(d, &pairs, a, b, c, u, v));
                        }
                    }
                }
            }
        }
        let checks = vec![
            alternation_check("de1", &d.terms[nu].f),
            alternation_check("de2", &d.terms[nu].g),
            de3,
            de4,
            de5,
            de6,
        ];
        orders.push(OrderReport { order: nu, checks });
    }
    DeformationReport { orders }
}

fn record(check: &mut IdentityCheck, args: &[usize], residual: Vec<Scalar>) {
    if residual.iter().any(|x| !x.is_zero()) {
        check.violations.push(Violation { args: args.to_vec(), residual });
    }
}

/// The obstruction cochains of an order-n deformation: (P, Q) in C^(3,4)
/// and the (4,5)-cocycle (R, S).
#[derive(Debug, Clone)]
pub struct ObstructionPair {
    pub p: Cochain,
    pub q: Cochain,
    pub rs: CochainPair,
}

impl ObstructionPair {
    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.rs.is_zero()
    }

    /// Canonical coordinates in C^(3,4) x C^(4,5), the order used by the
    /// deformation-cohomology node.
    pub fn node_coordinates(&self) -> Vec<Scalar> {
        let mut v = self.p.to_canonical();
        v.extend(self.q.to_canonical());
        v.extend(self.rs.to_canonical());
        v
    }
}

/// P, Q, R, S for a deformation valid through its order. R and S are also
/// recomputed through the circle products as a cross-check.
pub fn obstruction(d: &TruncatedDeformation) -> Result<ObstructionPair, DeformError> {
    let report = check_deformation(d);
    if let Some((order, equation)) = report.first_failure() {
        return Err(DeformError::InvalidDeformation { order, equation });
    }
    let n = d.algebra.dim();
    let orders = interior_orders(d.order() + 1);

    let mut p = Cochain::zero_with_pairs(3, n, n, 1);
    let mut q = Cochain::zero_with_pairs(4, n, n, 1);
    let mut r = Cochain::zero(4, n, n);
    let mut s = Cochain::zero(5, n, n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                p.add_to_value(&[a, b, c], &de3_sum(d, &orders, a, b, c));
                for u in 0..n {
                    q.add_to_value(&[a, b, c, u], &de4_sum(d, &orders, a, b, c, u));
                    r.add_to_value(&[a, b, c, u], &de5_sum(d, &orders, a, b, c, u));
                    for v in 0..n {
                        s.add_to_value(&[a, b, c, u, v], &de6_sum(d, &orders, a, b, c, u, v));
                    }
                }
            }
        }
    }
    let rs = CochainPair { f: r, g: s };

    #[cfg(debug_assertions)]
    {
        let mut r2 = Cochain::zero(4, n, n);
        let mut s2 = Cochain::zero(5, n, n);
        for &(i, j) in &orders {
            r2.add_assign(&circle1(&d.terms[i], &d.terms[j]).unwrap());
            s2.add_assign(&circle2(&d.terms[i], &d.terms[j]).unwrap());
        }
        debug_assert!(
            r2 == rs.f && s2 == rs.g,
            "circle-product form of (R,S) disagrees with the direct sums"
        );
        let rep = Representation::adjoint(&d.algebra);
        debug_assert!(
            crate::coboundary::delta_pair(&rep, &rs).is_zero(),
            "(R,S) failed to be a (4,5)-cocycle"
        );
    }

    Ok(ObstructionPair { p, q, rs })
}

fn circle_levels(c1: &CochainPair, c2: &CochainPair) -> Result<(usize, usize), DeformError> {
    let (k, l) = (c1.level(), c2.level());
    match (k, l) {
        (1, 1) | (1, 2) | (2, 1) => Ok((k, l)),
        _ => Err(DeformError::UnsupportedLevels(k, l)),
    }
}

fn dense(arity: usize, n: usize, m: usize, pairs: usize, mut at: impl FnMut(&[usize]) -> Vec<Scalar>) -> Cochain {
    let mut out = Cochain::zero_with_pairs(arity, n, m, pairs);
    let mut t = vec![0usize; arity];
    loop {
        out.add_to_value(&t, &at(&t));
        let mut slot = arity;
        loop {
            if slot == 0 {
                return out;
            }
            slot -= 1;
            t[slot] += 1;
            if t[slot] < n {
                break;
            }
            t[slot] = 0;
        }
    }
}

/// First component of the circle product. The declared pair structure of
/// the output is that of its target node; individual products need not
/// satisfy it, the obstruction sums do.
pub fn circle1(c1: &CochainPair, c2: &CochainPair) -> Result<Cochain, DeformError> {
    let (n, m) = (c1.dim(), c1.coeff_dim());
    let (f1, g1, f2, g2) = (&c1.f, &c1.g, &c2.f, &c2.g);
    Ok(match circle_levels(c1, c2)? {
        (1, 1) => dense(4, n, m, 2, |x| {
            let (a1, a2, a3, a4) = (x[0], x[1], x[2], x[3]);
            let mut r = g1.apply_mixed(&[a1, a2, 0], 2, f2.value(&[a3, a4]));
            sub(&mut r, &f1.apply_mixed(&[0, a4], 0, g2.value(&[a1, a2, a3])));
            sub(&mut r, &f1.apply_mixed(&[a3, 0], 1, g2.value(&[a1, a2, a4])));
            r
        }),
        (1, 2) => dense(6, n, m, 3, |x| {
            let (a1, a2, a3, a4, a5, a6) = (x[0], x[1], x[2], x[3], x[4], x[5]);
            let mut r = vec![Scalar::zero(); m];
            sub(&mut r, &f1.apply_mixed(&[0, a6], 0, g2.value(&[a1, a2, a3, a4, a5])));
            sub(&mut r, &f1.apply_mixed(&[a5, 0], 1, g2.value(&[a1, a2, a3, a4, a6])));
            add(&mut r, &g1.apply_mixed(&[a3, a4, 0], 2, f2.value(&[a1, a2, a5, a6])));
            sub(&mut r, &g1.apply_mixed(&[a1, a2, 0], 2, f2.value(&[a3, a4, a5, a6])));
            r
        }),
        (2, 1) => dense(6, n, m, 3, |x| {
            let (a1, a2, a3, a4, a5, a6) = (x[0], x[1], x[2], x[3], x[4], x[5]);
            let mut r = f1.apply_mixed(&[0, a4, a5, a6], 0, g2.value(&[a1, a2, a3]));
            add(&mut r, &f1.apply_mixed(&[a3, 0, a5, a6], 1, g2.value(&[a1, a2, a4])));
            add(&mut r, &f1.apply_mixed(&[a3, a4, 0, a6], 2, g2.value(&[a1, a2, a5])));
            add(&mut r, &f1.apply_mixed(&[a3, a4, a5, 0], 3, g2.value(&[a1, a2, a6])));
            sub(&mut r, &f1.apply_mixed(&[a1, a2, 0, a6], 2, g2.value(&[a3, a4, a5])));
            sub(&mut r, &f1.apply_mixed(&[a1, a2, a5, 0], 3, g2.value(&[a3, a4, a6])));
            add(&mut r, &g1.apply_mixed(&[a1, a2, a3, a4, 0], 4, f2.value(&[a5, a6])));
            r
        }),
        _ => unreachable!(),
    })
}

/// Second component of the circle product.
pub fn circle2(c1: &CochainPair, c2: &CochainPair) -> Result<Cochain, DeformError> {
    let (n, m) = (c1.dim(), c1.coeff_dim());
    let (g1, g2) = (&c1.g, &c2.g);
    Ok(match circle_levels(c1, c2)? {
        (1, 1) => dense(5, n, m, 2, |x| {
            let (a1, a2, a3, a4, a5) = (x[0], x[1], x[2], x[3], x[4]);
            let mut r = g1.apply_mixed(&[a1, a2, 0], 2, g2.value(&[a3, a4, a5]));
            sub(&mut r, &g1.apply_mixed(&[0, a4, a5], 0, g2.value(&[a1, a2, a3])));
            sub(&mut r, &g1.apply_mixed(&[a3, 0, a5], 1, g2.value(&[a1, a2, a4])));
            sub(&mut r, &g1.apply_mixed(&[a3, a4, 0], 2, g2.value(&[a1, a2, a5])));
            r
        }),
        (1, 2) => dense(7, n, m, 3, |x| {
            let (a1, a2, a3, a4, a5, a6, a7) = (x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
            let mut r = vec![Scalar::zero(); m];
            sub(&mut r, &g1.apply_mixed(&[0, a6, a7], 0, g2.value(&[a1, a2, a3, a4, a5])));
            sub(&mut r, &g1.apply_mixed(&[a5, 0, a7], 1, g2.value(&[a1, a2, a3, a4, a6])));
            sub(&mut r, &g1.apply_mixed(&[a5, a6, 0], 2, g2.value(&[a1, a2, a3, a4, a7])));
            add(&mut r, &g1.apply_mixed(&[a3, a4, 0], 2, g2.value(&[a1, a2, a5, a6, a7])));
            sub(&mut r, &g1.apply_mixed(&[a1, a2, 0], 2, g2.value(&[a3, a4, a5, a6, a7])));
            r
        }),
        (2, 1) => dense(7, n, m, 3, |x| {
            let (a1, a2, a3, a4, a5, a6, a7) = (x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
            let mut r = g1.apply_mixed(&[0, a4, a5, a6, a7], 0, g2.value(&[a1, a2, a3]));
            add(&mut r, &g1.apply_mixed(&[a3, 0, a5, a6, a7], 1, g2.value(&[a1, a2, a4])));
            add(&mut r, &g1.apply_mixed(&[a3, a4, 0, a6, a7], 2, g2.value(&[a1, a2, a5])));
            add(&mut r, &g1.apply_mixed(&[a3, a4, a5, 0, a7], 3, g2.value(&[a1, a2, a6])));
            add(&mut r, &g1.apply_mixed(&[a3, a4, a5, a6, 0], 4, g2.value(&[a1, a2, a7])));
            sub(&mut r, &g1.apply_mixed(&[a1, a2, 0, a6, a7], 2, g2.value(&[a3, a4, a5])));
            sub(&mut r, &g1.apply_mixed(&[a1, a2, a5, 0, a7], 3, g2.value(&[a3, a4, a6])));
            sub(&mut r, &g1.apply_mixed(&[a1, a2, a5, a6, 0], 4, g2.value(&[a3, a4, a7])));
            add(&mut r, &g1.apply_mixed(&[a1, a2, a3, a4, 0], 4, g2.value(&[a5, a6, a7])));
            r
        }),
        _ => unreachable!(),
    })
}

/// Why an extension failed: the obstruction's nonzero class.
#[derive(Debug, Clone)]
pub struct ObstructionClass {
    /// The order whose coefficient cannot exist.
    pub at_order: usize,
    /// ((P,Q),(R,S)) in the canonical C^(3,4) x C^(4,5) coordinates.
    pub cocycle: Vec<Scalar>,
    /// Canonical residue of the cocycle modulo Img(delta*, delta); nonzero.
    pub residue: Vec<Scalar>,
    /// Coordinates in the h_deformation_3445 representative basis, when
    /// that group is small enough to compute.
    pub class: Option<Vec<Scalar>>,
}

#[derive(Debug, Clone)]
pub enum Extension {
    Extended(TruncatedDeformation),
    Obstructed(ObstructionClass),
}

/// Tries to append an order-(n+1) coefficient. Solves the combined linear
/// system over canonical C^(2,3) coordinates; the particular solution with
/// all free coordinates zero makes the choice deterministic.
pub fn extend_one_order(d: &TruncatedDeformation) -> Result<Extension, DeformError> {
    let n = d.algebra.dim();
    let rep = Representation::adjoint(&d.algebra);
    let ob = obstruction(d)?;
    let rhs: Vec<Scalar> = ob.node_coordinates().into_iter().map(|x| -x).collect();
    let system = delta_star_delta_matrix(&rep);
    match system.solve(&rhs) {
        Some(x) => {
            let mut out = d.clone();
            out.push_term(CochainPair::from_canonical(1, n, n, &x))?;
            debug_assert!(check_deformation(&out).passed());
            Ok(Extension::Extended(out))
        }
        None => {
            let cocycle = ob.node_coordinates();
            let img = system.column_space();
            let residue = img.reduce(&cocycle);
            debug_assert!(residue.iter().any(|x| !x.is_zero()));
            let class = h_deformation_3445(&rep)
                .ok()
                .map(|h| h.class(&cocycle).expect("obstruction must lie in Ker(0, delta)"));
            Ok(Extension::Obstructed(ObstructionClass {
                at_order: d.order() + 1,
                cocycle,
                residue,
                class,
            }))
        }
    }
}

/// Whether a (2,3) pair is killed by both delta* and delta (membership in
/// Z^(2,3) without assembling any kernel).
pub fn is_cocycle_23(rep: &Representation, pair: &CochainPair) -> bool {
    pair.f.is_pair_alternating()
        && pair.g.is_pair_alternating()
        && delta_star_canonical(rep, pair).iter().all(Zero::is_zero)
        && delta_pair_canonical(rep, pair).iter().all(Zero::is_zero)
}

#[derive(Debug, Error)]
pub enum IntegrateError {
    #[error("the infinitesimal is not a (2,3)-cocycle")]
    NotACocycle,
    #[error("integration is obstructed at order {}", .0.at_order)]
    Obstructed(Box<ObstructionClass>),
    #[error(transparent)]
    Invalid(#[from] DeformError),
}

/// Integrates a (2,3)-cocycle order by order up to `max_order`.
pub fn integrate(
    algebra: &LieYamagutiAlgebra,
    infinitesimal: &CochainPair,
    max_order: usize,
) -> Result<TruncatedDeformation, IntegrateError> {
    assert!(max_order >= 1);
    let rep = Representation::adjoint(algebra);
    if infinitesimal.dim() != algebra.dim()
        || infinitesimal.coeff_dim() != algebra.dim()
        || infinitesimal.level() != 1
    {
        return Err(IntegrateError::Invalid(DeformError::ShapeMismatch {
            order: 1,
            what: "infinitesimal must be a (2,3) pair over the algebra".to_string(),
        }));
    }
    if !is_cocycle_23(&rep, infinitesimal) {
        return Err(IntegrateError::NotACocycle);
    }
    let mut d = TruncatedDeformation::new(algebra, vec![infinitesimal.clone()])?;
    while d.order() < max_order {
        match extend_one_order(&d)? {
            Extension::Extended(next) => d = next,
            Extension::Obstructed(class) => return Err(IntegrateError::Obstructed(Box::new(class))),
        }
    }
    Ok(d)
}

/// A truncated formal automorphism id + psi_1 t + psi_2 t^2 + ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalIsomorphism {
    dim: usize,
    psi: Vec<Matrix>, // coefficient of t^i at index i-1
}

impl FormalIsomorphism {
    pub fn identity(dim: usize) -> FormalIsomorphism {
        FormalIsomorphism { dim, psi: Vec::new() }
    }

    /// id + sum of the given t^1, t^2, ... coefficients.
    pub fn from_terms(dim: usize, terms: Vec<Matrix>) -> FormalIsomorphism {
        for t in &terms {
            assert_eq!((t.rows(), t.cols()), (dim, dim));
        }
        FormalIsomorphism { dim, psi: terms }
    }

    /// id + lambda t^k.
    pub fn single(dim: usize, k: usize, lambda: Matrix) -> FormalIsomorphism {
        assert!(k >= 1);
        assert_eq!((lambda.rows(), lambda.cols()), (dim, dim));
        let mut psi = vec![Matrix::zero(dim, dim); k];
        psi[k - 1] = lambda;
        FormalIsomorphism { dim, psi }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Highest order with a stored coefficient.
    pub fn order(&self) -> usize {
        self.psi.len()
    }

    /// Coefficients [id, psi_1, ..., psi_order], zero-padded.
    pub fn series(&self, order: usize) -> Vec<Matrix> {
        let mut out = Vec::with_capacity(order + 1);
        out.push(Matrix::identity(self.dim));
        for i in 1..=order {
            out.push(self.psi.get(i - 1).cloned().unwrap_or_else(|| Matrix::zero(self.dim, self.dim)));
        }
        out
    }

    /// Coefficients of the formal inverse, [id, theta_1, ..., theta_order]:
    /// theta_nu = -(psi_nu + sum_{i+j=nu, i,j>=1} theta_i psi_j).
    pub fn inverse_series(&self, order: usize) -> Vec<Matrix> {
        let psi = self.series(order);
        let mut theta: Vec<Matrix> = vec![Matrix::identity(self.dim)];
        for nu in 1..=order {
            let mut t = psi[nu].scale(&crate::linalg::int(-1));
            for i in 1..nu {
                t = t.sub(&theta[i].matmul(&psi[nu - i]));
            }
            theta.push(t);
        }
        theta
    }

    /// The truncated inverse as an isomorphism in its own right.
    pub fn inverse(&self, order: usize) -> FormalIsomorphism {
        let theta = self.inverse_series(order);
        FormalIsomorphism::from_terms(self.dim, theta[1..].to_vec())
    }

    /// self after other: (self . other)_nu = sum psi_i psi'_j over i+j=nu.
    pub fn compose(&self, other: &FormalIsomorphism, order: usize) -> FormalIsomorphism {
        assert_eq!(self.dim, other.dim);
        let a = self.series(order);
        let b = other.series(order);
        let mut terms = Vec::with_capacity(order);
        for nu in 1..=order {
            let mut t = Matrix::zero(self.dim, self.dim);
            for i in 0..=nu {
                t = t.add(&a[i].matmul(&b[nu - i]));
            }
            terms.push(t);
        }
        FormalIsomorphism::from_terms(self.dim, terms)
    }
}

fn column(m: &Matrix, j: usize) -> Vec<Scalar> {
    (0..m.rows()).map(|i| m.at(i, j).clone()).collect()
}

/// The deformation carried across phi: F'_t(a,b) = phi_t^{-1} F_t(phi_t a, phi_t b)
/// and likewise for the ternary series, truncated at d's order.
pub fn transport(
    d: &TruncatedDeformation,
    phi: &FormalIsomorphism,
) -> Result<TruncatedDeformation, DeformError> {
    let n = d.algebra.dim();
    if phi.dim() != n {
        return Err(DeformError::ShapeMismatch {
            order: 0,
            what: "isomorphism dimension differs from the algebra".to_string(),
        });
    }
    let order = d.order();
    let psi = phi.series(order);
    let theta = phi.inverse_series(order);
    let mut terms = Vec::with_capacity(order + 1);
    for nu in 0..=order {
        let f = dense(2, n, n, 1, |x| {
            let (a, b) = (x[0], x[1]);
            let mut out = vec![Scalar::zero(); n];
            for q in 0..=nu {
                for i in 0..=nu - q {
                    for k in 0..=nu - q - i {
                        let l = nu - q - i - k;
                        let inner = d.terms[i]
                            .f
                            .apply_vectors(&[&column(&psi[k], a), &column(&psi[l], b)]);
                        add(&mut out, &theta[q].apply(&inner));
                    }
                }
            }
            out
        });
        let g = dense(3, n, n, 1, |x| {
            let (a, b, c) = (x[0], x[1], x[2]);
            let mut out = vec![Scalar::zero(); n];
            for q in 0..=nu {
                for i in 0..=nu - q {
                    for k in 0..=nu - q - i {
                        for l in 0..=nu - q - i - k {
                            let m = nu - q - i - k - l;
                            let inner = d.terms[i].g.apply_vectors(&[
                                &column(&psi[k], a),
                                &column(&psi[l], b),
                                &column(&psi[m], c),
                            ]);
                            add(&mut out, &theta[q].apply(&inner));
                        }
                    }
                }
            }
            out
        });
        terms.push(CochainPair { f, g });
    }
    debug_assert_eq!(terms[0], *d.terms.first().unwrap());
    let out = TruncatedDeformation { algebra: d.algebra.clone(), terms };
    debug_assert!(check_deformation(&out).passed());
    Ok(out)
}

/// Whether phi carries d2 into d1 through the given order:
/// sum psi_i(F2_j(a,b)) = sum F1_i(psi_k a, psi_l b) per power of t, and the
/// ternary analogue.
pub fn intertwines(
    d1: &TruncatedDeformation,
    d2: &TruncatedDeformation,
    phi: &FormalIsomorphism,
    through: usize,
) -> bool {
    let n = d1.algebra.dim();
    let psi = phi.series(through);
    let term = |d: &TruncatedDeformation, i: usize| -> CochainPair {
        d.terms.get(i).cloned().unwrap_or_else(|| CochainPair::zero(1, n, n))
    };
    for nu in 0..=through {
        for a in 0..n {
            for b in 0..n {
                let mut lhs = vec![Scalar::zero(); n];
                for i in 0..=nu {
                    lhs = add_vec(lhs, &psi[i].apply(term(d2, nu - i).f.value(&[a, b])));
                }
                let mut rhs = vec![Scalar::zero(); n];
                for i in 0..=nu {
                    for k in 0..=nu - i {
                        let l = nu - i - k;
                        rhs = add_vec(
                            rhs,
                            &term(d1, i).f.apply_vectors(&[&column(&psi[k], a), &column(&psi[l], b)]),
                        );
                    }
                }
                if lhs != rhs {
                    return false;
                }
                for c in 0..n {
                    let mut lhs = vec![Scalar::zero(); n];
                    for i in 0..=nu {
                        lhs = add_vec(lhs, &psi[i].apply(term(d2, nu - i).g.value(&[a, b, c])));
                    }
                    let mut rhs = vec![Scalar::zero(); n];
                    for i in 0..=nu {
                        for k in 0..=nu - i {
                            for l in 0..=nu - i - k {
                                let m = nu - i - k - l;
                                rhs = add_vec(
                                    rhs,
                                    &term(d1, i).g.apply_vectors(&[
                                        &column(&psi[k], a),
                                        &column(&psi[l], b),
                                        &column(&psi[m], c),
                                    ]),
                                );
                            }
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn add_vec(mut acc: Vec<Scalar>, v: &[Scalar]) -> Vec<Scalar> {
    add(&mut acc, v);
    acc
}

#[derive(Debug, Clone)]
pub enum Equivalence {
    Equivalent(FormalIsomorphism),
    NotEquivalent { at_order: usize },
}

/// The derivative of transport in the isomorphism: for a level-one pair
/// (f, g), the one-cochain s goes to
///
/// ```text
/// (a, b)    |-> f(s a, b) + f(a, s b) - s f(a, b)
/// (a, b, c) |-> g(s a, b, c) + g(a, s b, c) + g(a, b, s c) - s g(a, b, c)
/// ```
///
/// in canonical C^(2,3) coordinates, one column per matrix unit of s. For
/// the base brackets this is exactly delta on one-cochains.
fn l_pair_matrix(pair: &CochainPair) -> Matrix {
    let n = pair.dim();
    let rows = CochainPair::space_dim(1, n, n);
    let mut columns = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            // s = E_rc: s e_c = e_r
            let f = dense(2, n, n, 1, |x| {
                let (a, b) = (x[0], x[1]);
                let mut out = vec![Scalar::zero(); n];
                if a == c {
                    add(&mut out, pair.f.value(&[r, b]));
                }
                if b == c {
                    add(&mut out, pair.f.value(&[a, r]));
                }
                let coeff = pair.f.entry(&[a, b], c).clone();
                out[r] -= coeff;
                out
            });
            let g = dense(3, n, n, 1, |x| {
                let (a, b, cc) = (x[0], x[1], x[2]);
                let mut out = vec![Scalar::zero(); n];
                if a == c {
                    add(&mut out, pair.g.value(&[r, b, cc]));
                }
                if b == c {
                    add(&mut out, pair.g.value(&[a, r, cc]));
                }
                if cc == c {
                    add(&mut out, pair.g.value(&[a, b, r]));
                }
                let coeff = pair.g.entry(&[a, b, cc], c).clone();
                out[r] -= coeff;
                out
            });
            columns.push(CochainPair { f, g }.to_canonical());
        }
    }
    Matrix::from_fn(rows, n * n, |t, col| columns[col][t].clone())
}

/// Searches for phi with transport(d1, phi) = d2 through the given order.
///
/// Three strategies run in turn, and every positive answer is re-verified
/// against the definition before it is returned.
///
/// 1. Exact alignment. At the first disagreeing order m the correction
///    id + s t^m moves the order-m coefficient by exactly delta(s) and
///    touches nothing below it, so each step is a linear solve with no
///    truncation error and the agreement order strictly advances.
/// 2. Kernel re-tuning. When an alignment step has no solution, a joint
///    pass re-solves orders 1..m to first order: the coefficient of t^nu
///    moves by sum_k L(cur_{nu-k})(s_k), a block-triangular system with
///    delta blocks on the diagonal. This revisits earlier kernel choices
///    whose influence on later orders is linear; alignment then resumes.
///    Re-tuning passes are bounded, so the search terminates.
/// 3. Trivialization. When both inputs normalize to the identity
///    deformation, the two normalization isomorphisms compose into a
///    witness directly; this covers pairs whose higher-order matching
///    needs kernel contributions that enter only quadratically.
///
/// At order one a negative answer is a genuine certificate: the order-one
/// action is exactly delta, so an unsolvable step means the infinitesimals
/// differ by a non-coboundary. At higher orders NotEquivalent reports the
/// first order the search could not repair.
pub fn are_equivalent(
    d1: &TruncatedDeformation,
    d2: &TruncatedDeformation,
    through: usize,
) -> Result<Equivalence, DeformError> {
    if d1.algebra != d2.algebra {
        return Err(DeformError::DifferentBaseAlgebra);
    }
    if through > d1.order().min(d2.order()) {
        return Err(DeformError::ShapeMismatch {
            order: through,
            what: "equivalence order exceeds a deformation's stored order".to_string(),
        });
    }
    let n = d1.algebra.dim();
    let pair_dim = CochainPair::space_dim(1, n, n);
    let term = |d: &TruncatedDeformation, i: usize| -> CochainPair {
        d.terms.get(i).cloned().unwrap_or_else(|| CochainPair::zero(1, n, n))
    };
    let as_matrix = |s: &[Scalar]| Matrix::from_fn(n, n, |r, c| s[r * n + c].clone());
    let mut phi = FormalIsomorphism::identity(n);
    let mut retunes = 0usize;
    let mut last_stuck = 0usize;
    let stuck = loop {
        let cur = transport(d1, &phi)?;
        let m = match (1..=through).find(|&nu| term(&cur, nu) != term(d2, nu)) {
            None => {
                debug_assert!(intertwines(d1, d2, &phi, through));
                return Ok(Equivalence::Equivalent(phi));
            }
            Some(m) => m,
        };
        let mut diff = term(d2, m);
        diff.add_scaled(&term(&cur, m), &crate::linalg::int(-1));
        if let Some(s) = l_pair_matrix(&term(&cur, 0)).solve(&diff.to_canonical()) {
            phi = phi.compose(&FormalIsomorphism::single(n, m, as_matrix(&s)), through);
            continue;
        }
        if m == 1 || retunes >= 3 || last_stuck == m {
            break m;
        }
        retunes += 1;
        last_stuck = m;
        let blocks: Vec<Matrix> = (0..m).map(|i| l_pair_matrix(&term(&cur, i))).collect();
        let system = Matrix::from_fn(m * pair_dim, m * n * n, |row, col| {
            let (nu, k) = (row / pair_dim + 1, col / (n * n) + 1);
            if k > nu {
                Scalar::zero()
            } else {
                blocks[nu - k].at(row % pair_dim, col % (n * n)).clone()
            }
        });
        let mut rhs = Vec::with_capacity(m * pair_dim);
        for nu in 1..=m {
            let mut diff = term(d2, nu);
            diff.add_scaled(&term(&cur, nu), &crate::linalg::int(-1));
            rhs.extend(diff.to_canonical());
        }
        match system.solve(&rhs) {
            Some(s) => {
                let mats = (0..m).map(|k| as_matrix(&s[k * n * n..(k + 1) * n * n])).collect();
                phi = phi.compose(&FormalIsomorphism::from_terms(n, mats), through);
            }
            None => break m,
        }
    };
    if stuck > 1 {
        // transport(d, alpha) then transport by beta is transport(d, alpha
        // compose beta), so two trivializations splice into a witness
        let n1 = normalize(d1);
        let n2 = normalize(d2);
        let trivial_through =
            |nz: &Normalized| (1..=through).all(|k| term(&nz.deformation, k).is_zero());
        if trivial_through(&n1) && trivial_through(&n2) {
            let witness = n1.isomorphism.compose(&n2.isomorphism.inverse(through), through);
            if intertwines(d1, d2, &witness, through) {
                return Ok(Equivalence::Equivalent(witness));
            }
            debug_assert!(false, "normalization witnesses must compose to an intertwiner");
        }
    }
    Ok(Equivalence::NotEquivalent { at_order: stuck })
}

/// Outcome of the normalization loop.
#[derive(Debug, Clone)]
pub struct Normalized {
    /// The transported deformation.
    pub deformation: TruncatedDeformation,
    /// The composite isomorphism: deformation = transport(input, isomorphism).
    pub isomorphism: FormalIsomorphism,
    /// First order whose infinitesimal is not a coboundary, if any.
    pub first_noncoboundary: Option<usize>,
}

impl Normalized {
    /// Every term was removed: the input is trivial through its order.
    pub fn trivial(&self) -> bool {
        self.first_noncoboundary.is_none() && self.deformation.n_infinitesimal().is_none()
    }
}

/// Repeatedly kills coboundary n-infinitesimals by transporting along
/// id + lambda t^n, stopping at the first genuinely non-trivial term (whose
/// class in H^(2,3) is then nonzero) or when nothing above order zero is
/// left.
pub fn normalize(d: &TruncatedDeformation) -> Normalized {
    let n = d.algebra.dim();
    let rep = Representation::adjoint(&d.algebra);
    let system = delta_one_matrix(&rep);
    let mut cur = d.clone();
    let mut phi = FormalIsomorphism::identity(n);
    loop {
        let (k, pair) = match cur.n_infinitesimal() {
            None => {
                return Normalized { deformation: cur, isomorphism: phi, first_noncoboundary: None }
            }
            Some((k, pair)) => (k, pair.clone()),
        };
        let rhs: Vec<Scalar> = pair.to_canonical().into_iter().map(|x| -x).collect();
        match system.solve(&rhs) {
            Some(x) => {
                let lambda = Cochain::from_canonical(n, n, 1, 0, &x).to_matrix();
                let step = FormalIsomorphism::single(n, k, lambda);
                cur = transport(&cur, &step).expect("shapes preserved");
                debug_assert!(cur.term(k).is_zero());
                phi = phi.compose(&step, d.order());
            }
            None => {
                return Normalized {
                    deformation: cur,
                    isomorphism: phi,
                    first_noncoboundary: Some(k),
                }
            }
        }
    }
}

/// Sufficient rigidity test: H^(2,3)(L;L) = 0. A zero group forces every
/// deformation to be trivial; a nonzero group decides nothing by itself.
pub fn is_rigid_sufficient(
    algebra: &LieYamagutiAlgebra,
) -> Result<bool, crate::cohomology::TooLarge> {
    let rep = Representation::adjoint(algebra);
    Ok(crate::cohomology::h23(&rep)?.h_dim() == 0)
}

/// The split extension on L + L twisted by a (2,3)-cocycle (f, g):
///
/// ```text
/// [(a1,b1),(a2,b2)]      = ([a1,b2] + [b1,a2] - f(b1,b2), [b1,b2])
/// {(a1,b1),(a2,b2),(a3,b3)} = ({a1,b2,b3} + {b1,a2,b3} + {b1,b2,a3} - g(b1,b2,b3), {b1,b2,b3})
/// ```
///
/// Returns the 2n-dimensional algebra together with its axiom report.
pub fn extension_by_cocycle(
    algebra: &LieYamagutiAlgebra,
    pair: &CochainPair,
) -> Result<(LieYamagutiAlgebra, AxiomReport), DeformError> {
    let n = algebra.dim();
    let rep = Representation::adjoint(algebra);
    if pair.level() != 1 || pair.dim() != n || pair.coeff_dim() != n {
        return Err(DeformError::ShapeMismatch {
            order: 1,
            what: "cocycle must be a (2,3) pair over the algebra".to_string(),
        });
    }
    if !is_cocycle_23(&rep, pair) {
        return Err(DeformError::NotACocycle);
    }
    // basis index u < n is (e_u, 0); index n + u is (0, e_u)
    let left = |u: usize| -> Option<usize> { (u < n).then_some(u) };
    let right = |u: usize| -> Option<usize> { (u >= n).then(|| u - n) };
    let mut binary = Cochain::zero(2, 2 * n, 2 * n);
    let mut ternary = Cochain::zero(3, 2 * n, 2 * n);
    for u in 0..2 * n {
        let (a1, b1) = (left(u), right(u));
        for v in 0..2 * n {
            let (a2, b2) = (left(v), right(v));
            let mut out = vec![Scalar::zero(); 2 * n];
            if let (Some(a1), Some(b2)) = (a1, b2) {
                add(&mut out[..n], algebra.bracket_basis(a1, b2));
            }
            if let (Some(b1), Some(a2)) = (b1, a2) {
                add(&mut out[..n], algebra.bracket_basis(b1, a2));
            }
            if let (Some(b1), Some(b2)) = (b1, b2) {
                sub(&mut out[..n], pair.f.value(&[b1, b2]));
                add(&mut out[n..], algebra.bracket_basis(b1, b2));
            }
            binary.add_to_value(&[u, v], &out);
            for w in 0..2 * n {
                let (a3, b3) = (left(w), right(w));
                let mut out = vec![Scalar::zero(); 2 * n];
                if let (Some(a1), Some(b2), Some(b3)) = (a1, b2, b3) {
                    add(&mut out[..n], algebra.triple_basis(a1, b2, b3));
                }
                if let (Some(b1), Some(a2), Some(b3)) = (b1, a2, b3) {
                    add(&mut out[..n], algebra.triple_basis(b1, a2, b3));
                }
                if let (Some(b1), Some(b2)) = (b1, b2) {
                    if let Some(a3) = a3 {
                        add(&mut out[..n], algebra.triple_basis(b1, b2, a3));
                    }
                    if let Some(b3) = b3 {
                        sub(&mut out[..n], pair.g.value(&[b1, b2, b3]));
                        add(&mut out[n..], algebra.triple_basis(b1, b2, b3));
                    }
                }
                ternary.add_to_value(&[u, v, w], &out);
            }
        }
    }
    let mut names: Vec<String> = algebra.basis_names().to_vec();
    names.extend(algebra.basis_names().iter().map(|s| format!("{s}'")));
    let ext = LieYamagutiAlgebra::from_tensors(names, binary, ternary);
    let report = ext.check_axioms();
    Ok((ext, report))
}
