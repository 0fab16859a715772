//! Small prime and prime-power fields with a dense matrix type, used to
//! evaluate matrix identities over `GF(2)`, `GF(3)` and `GF(4)`.
//!
//! The bit-packed [`crate::gf2`] types remain the workhorse for everything
//! binary; this module trades speed for generality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// A finite field with a small, explicitly listed element set.
pub trait FiniteField:
    Copy
    + Eq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const ORDER: u64;

    /// Multiplicative inverse; `None` for zero.
    fn inv(self) -> Option<Self>;

    /// Every field element, zero first.
    fn elements() -> Vec<Self>;

    fn nonzero() -> Vec<Self> {
        Self::elements().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

macro_rules! field_ops {
    ($t:ident) => {
        impl Zero for $t {
            fn zero() -> Self {
                $t(0)
            }
            fn is_zero(&self) -> bool {
                self.0 == 0
            }
        }
        impl One for $t {
            fn one() -> Self {
                $t(1)
            }
        }
        impl Div for $t {
            type Output = $t;
            fn div(self, rhs: $t) -> $t {
                self * rhs.inv().expect("division by zero")
            }
        }
    };
}

/// Integers mod 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf2(u8);

/// Integers mod 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf3(u8);

/// `GF(2)[ω]/(ω² + ω + 1)`; the value `a + bω` is stored as bits `b a`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gf4(u8);

impl Gf2 {
    pub fn new(v: u8) -> Self {
        Gf2(v & 1)
    }
}

impl Gf3 {
    pub fn new(v: u8) -> Self {
        Gf3(v % 3)
    }
}

impl Gf4 {
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA2: Gf4 = Gf4(3);

    pub fn new(v: u8) -> Self {
        Gf4(v & 3)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

field_ops!(Gf2);
field_ops!(Gf3);
field_ops!(Gf4);

impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, r: Gf2) -> Gf2 {
        Gf2(self.0 ^ r.0)
    }
}
impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, r: Gf2) -> Gf2 {
        self + r
    }
}
impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, r: Gf2) -> Gf2 {
        Gf2(self.0 & r.0)
    }
}
impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}
impl FiniteField for Gf2 {
    const ORDER: u64 = 2;
    fn inv(self) -> Option<Self> {
        (self.0 == 1).then_some(self)
    }
    fn elements() -> Vec<Self> {
        vec![Gf2(0), Gf2(1)]
    }
}

impl Add for Gf3 {
    type Output = Gf3;
    fn add(self, r: Gf3) -> Gf3 {
        Gf3((self.0 + r.0) % 3)
    }
}
impl Sub for Gf3 {
    type Output = Gf3;
    fn sub(self, r: Gf3) -> Gf3 {
        Gf3((self.0 + 3 - r.0) % 3)
    }
}
impl Mul for Gf3 {
    type Output = Gf3;
    fn mul(self, r: Gf3) -> Gf3 {
        Gf3(self.0 * r.0 % 3)
    }
}
impl Neg for Gf3 {
    type Output = Gf3;
    fn neg(self) -> Gf3 {
        Gf3((3 - self.0) % 3)
    }
}
impl FiniteField for Gf3 {
    const ORDER: u64 = 3;
    fn inv(self) -> Option<Self> {
        // 1 and 2 are self-inverse mod 3
        (self.0 != 0).then_some(self)
    }
    fn elements() -> Vec<Self> {
        vec![Gf3(0), Gf3(1), Gf3(2)]
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    fn add(self, r: Gf4) -> Gf4 {
        Gf4(self.0 ^ r.0)
    }
}
impl Sub for Gf4 {
    type Output = Gf4;
    fn sub(self, r: Gf4) -> Gf4 {
        self + r
    }
}
impl Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, r: Gf4) -> Gf4 {
        let (a, b) = (self.0, r.0);
        // carry-less product, then reduce ω² = ω + 1
        let mut p = 0u8;
        for i in 0..2 {
            if b >> i & 1 == 1 {
                p ^= a << i;
            }
        }
        if p & 4 != 0 {
            p ^= 0b111;
        }
        Gf4(p)
    }
}
impl Neg for Gf4 {
    type Output = Gf4;
    fn neg(self) -> Gf4 {
        self
    }
}
impl FiniteField for Gf4 {
    const ORDER: u64 = 4;
    fn inv(self) -> Option<Self> {
        match self.0 {
            0 => None,
            1 => Some(self),
            2 => Some(Gf4(3)),
            _ => Some(Gf4(2)),
        }
    }
    fn elements() -> Vec<Self> {
        (0..4).map(Gf4).collect()
    }
}

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: FiniteField> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// `alpha` times the matrix unit `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize, alpha: F) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, alpha);
        m
    }

    /// The 2×2 block matrix `(a b; c d)`.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (r, s) = (a.rows, a.cols);
        Self::from_fn(r + c.rows, s + b.cols, |i, j| match (i < r, j < s) {
            (true, true) => a.get(i, j),
            (true, false) => b.get(i, j - s),
            (false, true) => c.get(i - r, j),
            (false, false) => d.get(i - r, j - s),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(F::zero(), |acc, t| acc + self.get(i, t) * other.get(t, j))
        })
    }

    /// Product of a sequence of square matrices, left to right.
    pub fn product<'a>(n: usize, factors: impl IntoIterator<Item = &'a Self>) -> Self
    where
        F: 'a,
    {
        factors.into_iter().fold(Self::identity(n), |acc, m| acc.mul(m))
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let s = a.get(c, c).inv()?;
            a.scale_row(c, s);
            inv.scale_row(c, s);
            for r in (0..n).filter(|&r| r != c) {
                let f = a.get(r, c);
                if !f.is_zero() {
                    a.add_row_multiple(r, c, -f);
                    inv.add_row_multiple(r, c, -f);
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: F) {
        for j in 0..self.cols {
            let v = self.get(r, j) * s;
            self.set(r, j, v);
        }
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, f: F) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + f * self.get(src, j);
            self.set(dst, j, v);
        }
    }
}

impl<F: FiniteField> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<F>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}
