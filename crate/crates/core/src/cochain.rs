//! Dense multilinear maps and the slot-pair alternation constraints of the
//! Yamaguti cochain spaces.
//!
//! A `Cochain` stores a k-linear map L^k -> V as a rank-(k+1) array over Q.
//! The first `pairs` slot pairs (1,2), (3,4), ... are the constrained ones:
//! a cochain in the corresponding space vanishes whenever such a pair is
//! equal, hence is antisymmetric inside each constrained pair. Storage never
//! enforces the constraint; `is_pair_alternating` checks it and the canonical
//! coordinate maps assume it.
//!
//! Canonical coordinates index a constrained space by (ordered pair i<j per
//! constrained slot pair) x (free slot values) x (target coordinate), in
//! lexicographic order. All cohomology matrices are written in these
//! coordinates, so a coordinate vector identifies a cochain uniquely and
//! deterministically.

use crate::linalg::Scalar;
use num_traits::Zero;

/// Number of ordered pairs i < j drawn from 0..n.
pub fn pair_count(n: usize) -> usize {
    n * (n.saturating_sub(1)) / 2
}

/// Ordered pairs (i, j) with i < j in lexicographic order.
pub fn pairs_lex(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(n));
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

fn pair_rank(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs (0,1)..(0,n-1) come first, then (1,2).. etc.
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Dimension of the space of k-linear maps L^k -> V alternating in the first
/// `pairs` slot pairs: m * (n(n-1)/2)^pairs * n^(k - 2*pairs).
pub fn space_dim(n: usize, m: usize, arity: usize, pairs: usize) -> usize {
    assert!(2 * pairs <= arity);
    m * pair_count(n).pow(pairs as u32) * n.pow((arity - 2 * pairs) as u32)
}

/// Argument tuples indexing the canonical coordinates, in order.
pub fn canonical_tuples(n: usize, arity: usize, pairs: usize) -> Vec<Vec<usize>> {
    assert!(2 * pairs <= arity);
    let plex = pairs_lex(n);
    let free = arity - 2 * pairs;
    let mut out = Vec::new();
    let total = plex.len().pow(pairs as u32) * n.pow(free as u32);
    for mut code in 0..total {
        let mut digits = vec![0usize; pairs + free];
        for d in (0..pairs + free).rev() {
            let radix = if d < pairs { plex.len() } else { n };
            digits[d] = code % radix;
            code /= radix;
        }
        let mut tuple = Vec::with_capacity(arity);
        for (d, &digit) in digits.iter().enumerate() {
            if d < pairs {
                let (i, j) = plex[digit];
                tuple.push(i);
                tuple.push(j);
            } else {
                tuple.push(digit);
            }
        }
        out.push(tuple);
    }
    out
}

/// Dense k-linear map L^k -> V with values in coordinates of V.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    dim: usize,
    coeff_dim: usize,
    pairs: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Cochain(arity={}, dim={}, coeff_dim={}, pairs={}, nonzero={})",
            self.arity,
            self.dim,
            self.coeff_dim,
            self.pairs,
            self.data.iter().filter(|x| !x.is_zero()).count()
        )
    }
}

impl Cochain {
    /// Zero cochain with the standard constraint count floor(arity/2).
    pub fn zero(arity: usize, dim: usize, coeff_dim: usize) -> Cochain {
        Cochain::zero_with_pairs(arity, dim, coeff_dim, arity / 2)
    }

    /// Zero cochain with an explicit number of constrained leading pairs.
    /// The second component of the obstruction target space constrains only
    /// its first pair, which is the one place this is needed.
    pub fn zero_with_pairs(arity: usize, dim: usize, coeff_dim: usize, pairs: usize) -> Cochain {
        assert!(arity >= 1 && 2 * pairs <= arity);
        let len = dim.pow(arity as u32) * coeff_dim;
        Cochain {
            arity,
            dim,
            coeff_dim,
            pairs,
            data: vec![Scalar::zero(); len],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff_dim(&self) -> usize {
        self.coeff_dim
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    fn offset(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.arity);
        let mut acc = 0;
        for &i in tuple {
            debug_assert!(i < self.dim);
            acc = acc * self.dim + i;
        }
        acc * self.coeff_dim
    }

    /// Value vector at a basis argument tuple.
    pub fn value(&self, tuple: &[usize]) -> &[Scalar] {
        let off = self.offset(tuple);
        &self.data[off..off + self.coeff_dim]
    }

    pub fn entry(&self, tuple: &[usize], t: usize) -> &Scalar {
        &self.data[self.offset(tuple) + t]
    }

    pub fn set_entry(&mut self, tuple: &[usize], t: usize, v: Scalar) {
        let off = self.offset(tuple);
        self.data[off + t] = v;
    }

    pub fn add_to_value(&mut self, tuple: &[usize], v: &[Scalar]) {
        let off = self.offset(tuple);
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                self.data[off + k] += x;
            }
        }
    }

    pub fn sub_from_value(&mut self, tuple: &[usize], v: &[Scalar]) {
        let off = self.offset(tuple);
        for (k, x) in v.iter().enumerate() {
            if !x.is_zero() {
                self.data[off + k] -= x;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add_assign(&mut self, other: &Cochain) {
        self.add_scaled(other, &crate::linalg::int(1));
    }

    pub fn sub_assign(&mut self, other: &Cochain) {
        self.add_scaled(other, &crate::linalg::int(-1));
    }

    pub fn add_scaled(&mut self, other: &Cochain, s: &Scalar) {
        assert_eq!(
            (self.arity, self.dim, self.coeff_dim),
            (other.arity, other.dim, other.coeff_dim),
            "shape mismatch"
        );
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    pub fn scale_assign(&mut self, s: &Scalar) {
        for a in self.data.iter_mut() {
            if !a.is_zero() {
                *a *= s;
            }
        }
    }

    pub fn negated(&self) -> Cochain {
        let mut out = self.clone();
        out.scale_assign(&crate::linalg::int(-1));
        out
    }

    /// Applies the map with basis arguments everywhere except `slot`, which
    /// takes the vector `v`. This is the workhorse for bracket insertions
    /// like f(x1, ..., [a,b], ..., xk).
    pub fn apply_mixed(&self, tuple: &[usize], slot: usize, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.coeff_dim];
        let mut work = tuple.to_vec();
        for (c, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            work[slot] = c;
            let val = self.value(&work);
            for (k, x) in val.iter().enumerate() {
                if !x.is_zero() {
                    out[k] += coef * x;
                }
            }
        }
        out
    }

    /// Full multilinear evaluation on coordinate vectors.
    pub fn apply_vectors(&self, args: &[&[Scalar]]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.arity);
        for a in args {
            assert_eq!(a.len(), self.dim);
        }
        let mut out = vec![Scalar::zero(); self.coeff_dim];
        let mut tuple = vec![0usize; self.arity];
        loop {
            let mut coef = crate::linalg::int(1);
            let mut zero = false;
            for (slot, &i) in tuple.iter().enumerate() {
                let c = &args[slot][i];
                if c.is_zero() {
                    zero = true;
                    break;
                }
                coef *= c;
            }
            if !zero {
                let val = self.value(&tuple);
                for (k, x) in val.iter().enumerate() {
                    if !x.is_zero() {
                        out[k] += &coef * x;
                    }
                }
            }
            // odometer
            let mut slot = self.arity;
            loop {
                if slot == 0 {
                    return out;
                }
                slot -= 1;
                tuple[slot] += 1;
                if tuple[slot] < self.dim {
                    break;
                }
                tuple[slot] = 0;
            }
        }
    }

    /// True iff the map vanishes whenever a constrained slot pair is equal
    /// and is antisymmetric under swapping inside each constrained pair.
    pub fn is_pair_alternating(&self) -> bool {
        let mut tuple = vec![0usize; self.arity];
        loop {
            for p in 0..self.pairs {
                let (a, b) = (tuple[2 * p], tuple[2 * p + 1]);
                if a == b {
                    if !self.value(&tuple).iter().all(Zero::is_zero) {
                        return false;
                    }
                } else if a < b {
                    let mut swapped = tuple.clone();
                    swapped.swap(2 * p, 2 * p + 1);
                    let v = self.value(&tuple);
                    let w = self.value(&swapped);
                    if (0..self.coeff_dim).any(|k| v[k].clone() + &w[k] != Scalar::zero()) {
                        return false;
                    }
                }
            }
            let mut slot = self.arity;
            loop {
                if slot == 0 {
                    return true;
                }
                slot -= 1;
                tuple[slot] += 1;
                if tuple[slot] < self.dim {
                    break;
                }
                tuple[slot] = 0;
            }
        }
    }

    /// Canonical coordinate vector. Only meaningful when the cochain is
    /// pair-alternating; the representative entries are read off directly.
    pub fn to_canonical(&self) -> Vec<Scalar> {
        let tuples = canonical_tuples(self.dim, self.arity, self.pairs);
        let mut out = Vec::with_capacity(tuples.len() * self.coeff_dim);
        for tuple in &tuples {
            out.extend_from_slice(self.value(tuple));
        }
        out
    }

    /// Rebuilds the dense tensor from canonical coordinates, propagating
    /// signs to non-representative tuples and zeros to pair diagonals.
    pub fn from_canonical(
        n: usize,
        coeff_dim: usize,
        arity: usize,
        pairs: usize,
        coords: &[Scalar],
    ) -> Cochain {
        assert_eq!(coords.len(), space_dim(n, coeff_dim, arity, pairs));
        let mut out = Cochain::zero_with_pairs(arity, n, coeff_dim, pairs);
        let plex_len = pair_count(n);
        let free = arity - 2 * pairs;
        let mut tuple = vec![0usize; arity];
        loop {
            'entry: {
                let mut sign_negative = false;
                let mut rank = 0usize;
                for p in 0..pairs {
                    let (a, b) = (tuple[2 * p], tuple[2 * p + 1]);
                    if a == b {
                        break 'entry; // diagonal: stays zero
                    }
                    let (lo, hi, flip) = if a < b { (a, b, false) } else { (b, a, true) };
                    sign_negative ^= flip;
                    rank = rank * plex_len + pair_rank(n, lo, hi);
                }
                for fslot in 0..free {
                    rank = rank * n + tuple[2 * pairs + fslot];
                }
                let off = out.offset(&tuple);
                for t in 0..coeff_dim {
                    let c = &coords[rank * coeff_dim + t];
                    if !c.is_zero() {
                        out.data[off + t] = if sign_negative { -c.clone() } else { c.clone() };
                    }
                }
            }
            let mut slot = arity;
            loop {
                if slot == 0 {
                    return out;
                }
                slot -= 1;
                tuple[slot] += 1;
                if tuple[slot] < n {
                    break;
                }
                tuple[slot] = 0;
            }
        }
    }

    /// Arity-1 cochain from an m x n matrix (column i is the image of e_i).
    pub fn from_matrix(mat: &crate::linalg::Matrix) -> Cochain {
        let (m, n) = (mat.rows(), mat.cols());
        let mut out = Cochain::zero(1, n, m);
        for i in 0..n {
            for t in 0..m {
                out.set_entry(&[i], t, mat.at(t, i).clone());
            }
        }
        out
    }

    /// The m x n matrix of an arity-1 cochain.
    pub fn to_matrix(&self) -> crate::linalg::Matrix {
        assert_eq!(self.arity, 1);
        crate::linalg::Matrix::from_fn(self.coeff_dim, self.dim, |t, i| self.entry(&[i], t).clone())
    }
}

/// A cochain pair (f, g) of arities (2p, 2p+1): one node of the Yamaguti
/// complex. Level p = arity(f)/2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CochainPair {
    pub f: Cochain,
    pub g: Cochain,
}

impl CochainPair {
    pub fn zero(level: usize, dim: usize, coeff_dim: usize) -> CochainPair {
        assert!(level >= 1);
        CochainPair {
            f: Cochain::zero(2 * level, dim, coeff_dim),
            g: Cochain::zero(2 * level + 1, dim, coeff_dim),
        }
    }

    pub fn level(&self) -> usize {
        debug_assert_eq!(self.f.arity() + 1, self.g.arity());
        self.f.arity() / 2
    }

    pub fn dim(&self) -> usize {
        self.f.dim()
    }

    pub fn coeff_dim(&self) -> usize {
        self.f.coeff_dim()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.is_zero()
    }

    pub fn add_scaled(&mut self, other: &CochainPair, s: &Scalar) {
        self.f.add_scaled(&other.f, s);
        self.g.add_scaled(&other.g, s);
    }

    /// Concatenated canonical coordinates, f block then g block.
    pub fn to_canonical(&self) -> Vec<Scalar> {
        let mut out = self.f.to_canonical();
        out.extend(self.g.to_canonical());
        out
    }

    pub fn from_canonical(level: usize, n: usize, m: usize, coords: &[Scalar]) -> CochainPair {
        let df = space_dim(n, m, 2 * level, level);
        let dg = space_dim(n, m, 2 * level + 1, level);
        assert_eq!(coords.len(), df + dg);
        CochainPair {
            f: Cochain::from_canonical(n, m, 2 * level, level, &coords[..df]),
            g: Cochain::from_canonical(n, m, 2 * level + 1, level, &coords[df..]),
        }
    }

    /// Canonical dimension of the level-p node C^(2p,2p+1).
    pub fn space_dim(level: usize, n: usize, m: usize) -> usize {
        space_dim(n, m, 2 * level, level) + space_dim(n, m, 2 * level + 1, level)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn space_dims_match_formula() {
        // n = 3, m = 3: dim C^2 = 3*3 = 9, C^3 = 27, C^4 = 27, C^5 = 81.
        assert_eq!(space_dim(3, 3, 2, 1), 9);
        assert_eq!(space_dim(3, 3, 3, 1), 27);
        assert_eq!(space_dim(3, 3, 4, 2), 27);
        assert_eq!(space_dim(3, 3, 5, 2), 81);
        // the obstruction-node C^4 with only its first pair constrained
        assert_eq!(space_dim(3, 3, 4, 1), 81);
    }

    #[test]
    fn canonical_tuples_are_lex_ordered() {
        let tuples = canonical_tuples(3, 3, 1);
        assert_eq!(tuples.len(), 9);
        assert_eq!(tuples[0], vec![0, 1, 0]);
        assert_eq!(tuples[1], vec![0, 1, 1]);
        assert_eq!(tuples[3], vec![0, 2, 0]);
        assert_eq!(tuples[8], vec![1, 2, 2]);
    }

    #[test]
    fn canonical_round_trip_with_signs() {
        let mut c = Cochain::zero(3, 2, 2);
        // f(e0,e1,e1) = (3, -1); antisymmetry partner must be filled in.
        c.set_entry(&[0, 1, 1], 0, int(3));
        c.set_entry(&[0, 1, 1], 1, int(-1));
        c.set_entry(&[1, 0, 1], 0, int(-3));
        c.set_entry(&[1, 0, 1], 1, int(1));
        assert!(c.is_pair_alternating());
        let coords = c.to_canonical();
        let back = Cochain::from_canonical(2, 2, 3, 1, &coords);
        assert_eq!(back, c);
        assert_eq!(back.entry(&[1, 0, 1], 0), &int(-3));
    }

    #[test]
    fn alternation_detects_diagonal_violation() {
        let mut c = Cochain::zero(2, 2, 1);
        c.set_entry(&[1, 1], 0, int(5));
        assert!(!c.is_pair_alternating());
    }

    #[test]
    fn apply_mixed_is_linear_in_the_slot() {
        let mut c = Cochain::zero(2, 2, 1);
        c.set_entry(&[0, 1], 0, int(2));
        c.set_entry(&[1, 0], 0, int(-2));
        let v = vec![int(3), int(4)];
        // f(e0, v) = 4 * f(e0,e1) = 8
        assert_eq!(c.apply_mixed(&[0, 0], 1, &v), vec![int(8)]);
        // full bilinear check agrees
        let w = vec![int(1), int(0)];
        assert_eq!(c.apply_vectors(&[&w, &v]), vec![int(8)]);
    }
}
