use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point of `Z (+) Lambda (+) Z`: level, finite part in simple-coroot
/// coordinates, and the coefficient of `delta`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    pub central: i64,
    pub finite: Vec<i64>,
    pub delta: i64,
}

impl LatticeVector {
    pub fn new(central: i64, finite: Vec<i64>, delta: i64) -> Self {
        LatticeVector { central, finite, delta }
    }

    pub fn finite(finite: Vec<i64>) -> Self {
        LatticeVector::new(0, finite, 0)
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector::finite(vec![0; rank])
    }

    /// `delta`, the minimal positive imaginary coroot.
    pub fn delta_unit(rank: usize) -> Self {
        LatticeVector::new(0, vec![0; rank], 1)
    }

    /// The `i`-th simple coroot (0-based) of the finite system.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut f = vec![0; rank];
        f[i] = 1;
        LatticeVector::finite(f)
    }

    pub fn rank(&self) -> usize {
        self.finite.len()
    }

    pub fn is_zero(&self) -> bool {
        self.central == 0 && self.delta == 0 && self.finite.iter().all(|&c| c == 0)
    }

    pub fn is_pure_finite(&self) -> bool {
        self.central == 0 && self.delta == 0
    }

    /// Degree along `delta` of the monomial `e^self` (so `e^{-j delta}` has degree `j`).
    pub fn delta_degree(&self) -> i64 {
        -self.delta
    }

    /// Sum of finite coordinates.
    pub fn height(&self) -> i64 {
        self.finite.iter().sum()
    }

    pub fn scaled(&self, k: i64) -> Self {
        LatticeVector {
            central: self.central * k,
            finite: self.finite.iter().map(|c| c * k).collect(),
            delta: self.delta * k,
        }
    }

    pub fn with_delta(&self, delta: i64) -> Self {
        LatticeVector { delta, ..self.clone() }
    }

    /// Tits cone membership: positive level, or level zero with vanishing finite part.
    pub fn in_tits_cone(&self) -> bool {
        self.central > 0 || (self.central == 0 && self.finite.iter().all(|&c| c == 0))
    }
}

impl Ord for LatticeVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.delta_degree()
            .cmp(&other.delta_degree())
            .then_with(|| self.finite.cmp(&other.finite))
            .then_with(|| self.central.cmp(&other.central))
    }
}

impl PartialOrd for LatticeVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.rank(), rhs.rank());
        LatticeVector {
            central: self.central + rhs.central,
            finite: self.finite.iter().zip(&rhs.finite).map(|(a, b)| a + b).collect(),
            delta: self.delta + rhs.delta,
        }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self + &(-rhs)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        self.scaled(-1)
    }
}

impl Add for LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: LatticeVector) -> LatticeVector {
        &self + &rhs
    }
}

impl Sub for LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: LatticeVector) -> LatticeVector {
        &self - &rhs
    }
}

impl Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        -&self
    }
}

/// Printed as `(a; c1,c2,...; j)`.
impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fin: Vec<String> = self.finite.iter().map(|c| c.to_string()).collect();
        write!(f, "({}; {}; {})", self.central, fin.join(","), self.delta)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
