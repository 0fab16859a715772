//! Polynomials over GF(2) and factorization of `X^n - 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Polynomial over GF(2), coefficient of `X^i` in bit `i`. Stored without
/// trailing zero words, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(d: usize) -> Self {
        let mut words = vec![0u64; d / 64 + 1];
        words[d / 64] = 1 << (d % 64);
        Gf2Poly { words }
    }

    /// `X^n - 1` (equal to `X^n + 1` in characteristic 2).
    pub fn x_n_minus_one(n: usize) -> Self {
        Self::monomial(n).add(&Self::one())
    }

    /// Builds a polynomial from the exponents that carry a 1.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p = p.add(&Self::monomial(e));
        }
        p
    }

    /// Coefficients lowest degree first.
    pub fn from_coeffs(bits: &[bool]) -> Self {
        let exps: Vec<usize> = bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect();
        Self::from_exponents(&exps)
    }

    fn normalize(mut self) -> Self {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn exponents(&self) -> Vec<usize> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).filter(|&i| self.coeff(i)).collect(),
        }
    }

    /// `X^deg f(1/X)`.
    pub fn reciprocal(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => Self::from_exponents(&self.exponents().iter().map(|e| d - e).collect::<Vec<_>>()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.words.get(i).unwrap_or(&0) ^ other.words.get(i).unwrap_or(&0))
            .collect();
        Gf2Poly { words }.normalize()
    }

    fn shl(&self, s: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ws, bs) = (s / 64, s % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] ^= w << bs;
            if bs != 0 {
                words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        Gf2Poly { words }.normalize()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for e in other.exponents() {
            acc = acc.add(&self.shl(e));
        }
        acc
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let s = rd - dd;
            rem = rem.add(&divisor.shl(s));
            quot = quot.add(&Self::monomial(s));
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// `X^(2^d) mod modulus`.
    pub fn x_pow_two_pow_mod(d: usize, modulus: &Self) -> Self {
        let mut r = Self::x().rem(modulus);
        for _ in 0..d {
            r = r.mul_mod(&r, modulus);
        }
        r
    }

    /// Irreducibility via `gcd(f, X^(2^d) - X) = 1` for all `1 <= d < deg f`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        (1..n).all(|d| {
            let t = Self::x_pow_two_pow_mod(d, self).add(&Self::x());
            self.gcd(&t).degree() == Some(0)
        })
    }

    /// Coefficient vector of length `len` (lowest degree first).
    pub fn to_bitvector(&self, len: usize) -> BitVector {
        let mut v = BitVector::zeros(len);
        for e in self.exponents() {
            v.set(e, true);
        }
        v
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = self.exponents();
        if exps.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = exps
            .iter()
            .rev()
            .map(|&e| match e {
                0 => "1".to_string(),
                1 => "X".to_string(),
                _ => format!("X^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

/// 2-cyclotomic cosets modulo odd `n`, each sorted, ordered by least element.
pub fn cyclotomic_cosets(n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = (2 * x) % n;
        }
        c.sort_unstable();
        cosets.push(c);
    }
    cosets
}

/// Splits a squarefree polynomial into its irreducible factors with
/// Berlekamp's algorithm. The result is sorted.
pub fn factor_squarefree(f: &Gf2Poly) -> Vec<Gf2Poly> {
    let Some(d) = f.degree() else {
        return Vec::new();
    };
    if d <= 1 {
        return vec![f.clone()];
    }
    // row i of q: X^(2i) mod f
    let mut q = BitMatrix::zeros(d, d);
    let x2 = Gf2Poly::monomial(2).rem(f);
    let mut cur = Gf2Poly::one();
    for i in 0..d {
        q.set_row(i, cur.to_bitvector(d));
        cur = cur.mul_mod(&x2, f);
    }
    // g with g^2 = g (mod f) satisfy g·(Q - I) = 0
    let berlekamp = q.add(&BitMatrix::identity(d)).transpose().kernel_basis();
    let target = berlekamp.nrows();
    let mut factors = vec![f.clone()];
    for g in berlekamp.rows() {
        if factors.len() == target {
            break;
        }
        let g = Gf2Poly::from_coeffs(&g.to_bools());
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.degree() == Some(1) {
                next.push(h);
                continue;
            }
            let a = h.gcd(&g.rem(&h));
            match a.degree() {
                Some(ad) if ad > 0 && Some(ad) < h.degree() => {
                    let b = h.divrem(&a).0;
                    next.push(a);
                    next.push(b);
                }
                _ => next.push(h),
            }
        }
        factors = next;
    }
    factors.sort();
    factors
}

/// Irreducible factors of `X^n - 1` over GF(2) for odd `n`.
pub fn factor_cyclic(n: usize) -> Result<Vec<Gf2Poly>> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::param(format!(
            "X^n - 1 is squarefree only for odd n, got n = {n}"
        )));
    }
    Ok(factor_squarefree(&Gf2Poly::x_n_minus_one(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(fs: &[Gf2Poly]) -> Vec<usize> {
        let mut d: Vec<usize> = fs.iter().map(|f| f.degree().unwrap()).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(factor_cyclic(1).unwrap(), vec![Gf2Poly::from_exponents(&[0, 1])]);
        assert_eq!(degrees(&factor_cyclic(7).unwrap()), vec![1, 3, 3]);
        assert_eq!(degrees(&factor_cyclic(31).unwrap()), vec![1, 5, 5, 5, 5, 5, 5]);
        assert!(factor_cyclic(8).is_err());
        assert!(factor_cyclic(0).is_err());
    }

    #[test]
    fn cosets_mod_7() {
        assert_eq!(
            cyclotomic_cosets(7),
            vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]
        );
    }

    #[test]
    fn factorization_reconstructs_for_all_odd_n() {
        for n in (1..=63).step_by(2) {
            let fs = factor_cyclic(n).unwrap();
            let mut prod = Gf2Poly::one();
            for f in &fs {
                assert!(f.is_irreducible(), "n = {n}, factor {f}");
                prod = prod.mul(f);
            }
            assert_eq!(prod, Gf2Poly::x_n_minus_one(n), "n = {n}");
            let mut dedup = fs.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), fs.len());
            let mut coset_sizes: Vec<usize> =
                cyclotomic_cosets(n).iter().map(Vec::len).collect();
            coset_sizes.sort_unstable();
            assert_eq!(degrees(&fs), coset_sizes, "n = {n}");
        }
    }

    #[test]
    fn divrem_identity() {
        let a = Gf2Poly::from_exponents(&[0, 3, 7, 70, 130]);
        let b = Gf2Poly::from_exponents(&[1, 2, 65]);
        let (q, r) = a.divrem(&b);
        assert!(r.degree().unwrap_or(0) < 65);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn reducible_detected() {
        let f = Gf2Poly::from_exponents(&[0, 2]); // (X+1)^2
        assert!(!f.is_irreducible());
        assert!(Gf2Poly::from_exponents(&[0, 1, 3]).is_irreducible());
    }
}
