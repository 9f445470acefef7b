//! Torus fixed points of `(P^n)^m` and their weight statistics.
//!
//! A fixed point is a string `f in [n+1]^m` (entries 1-based). Enumeration is
//! lexicographic with the first coordinate most significant, so the fixed
//! point with index `i` is `i` written in base `n+1`, digits shifted by one.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{format_rational, int, parse_rational, rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("ambient dimension must be at least 1")]
    ZeroDimension,
    #[error("need at least n+2 = {needed} weights, got {got}")]
    TooFewWeights { needed: usize, got: usize },
    #[error("weight d_{index} = {value} is not in the open interval (0, 1)")]
    WeightOutOfRange { index: usize, value: String },
    #[error("bad weight list: {0}")]
    Parse(String),
    #[error("chambers are only defined for n = 1 and n = 2, got n = {0}")]
    UnsupportedRank(usize),
    #[error("fixed point count (n+1)^m overflows for n = {n}, m = {m}")]
    TooManyFixedPoints { n: usize, m: usize },
}

/// Fano type of the pair `(P^n, sum d_i H_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilityClass {
    LogFano,
    CalabiYau,
    GeneralType,
}

impl fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StabilityClass::LogFano => "log Fano",
            StabilityClass::CalabiYau => "log Calabi-Yau",
            StabilityClass::GeneralType => "log general type",
        };
        f.write_str(s)
    }
}

/// Rational weights `d = (d_1, ..., d_m)` on `m` hyperplanes in `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    n: usize,
    d: Vec<Rational>,
}

impl WeightVector {
    pub fn new(n: usize, d: Vec<Rational>) -> Result<Self, ArrangementError> {
        if n == 0 {
            return Err(ArrangementError::ZeroDimension);
        }
        if d.len() < n + 2 {
            return Err(ArrangementError::TooFewWeights {
                needed: n + 2,
                got: d.len(),
            });
        }
        let zero = Rational::zero();
        let one = Rational::one();
        for (i, di) in d.iter().enumerate() {
            if *di <= zero || *di >= one {
                return Err(ArrangementError::WeightOutOfRange {
                    index: i + 1,
                    value: format_rational(di),
                });
            }
        }
        Ok(WeightVector { n, d })
    }

    /// Parses `"d1,d2,...,dm"`; entries are `p/q` or exact decimals.
    pub fn parse(n: usize, list: &str) -> Result<Self, ArrangementError> {
        let d = list
            .split(',')
            .map(|s| parse_rational(s).map_err(|e| ArrangementError::Parse(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        WeightVector::new(n, d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.d.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.d
    }

    pub fn total(&self) -> Rational {
        self.d.iter().sum()
    }

    pub fn stability_class(&self) -> StabilityClass {
        validate_weights(self.n, &self.d).expect("validated on construction")
    }

    /// `t * d`, re-validated.
    pub fn scaled(&self, t: &Rational) -> Result<Self, ArrangementError> {
        WeightVector::new(self.n, self.d.iter().map(|di| di * t).collect())
    }

    /// Weights reordered so that entry `i` of the result is `d[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.m());
        WeightVector {
            n: self.n,
            d: perm.iter().map(|&j| self.d[j].clone()).collect(),
        }
    }

    pub fn to_list_string(&self) -> String {
        self.d
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Common denominator `L` and integer numerators `d_i * L`.
    pub(crate) fn scaled_integers(&self) -> (BigInt, Vec<BigInt>) {
        let lcm = self
            .d
            .iter()
            .fold(BigInt::one(), |acc, di| acc.lcm(di.denom()));
        let nums = self
            .d
            .iter()
            .map(|di| di.numer() * (&lcm / di.denom()))
            .collect();
        (lcm, nums)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} d=({})", self.n, self.to_list_string())
    }
}

/// Classifies raw weights by `sum d_i` against `n+1`.
pub fn validate_weights(n: usize, d: &[Rational]) -> Result<StabilityClass, ArrangementError> {
    let zero = Rational::zero();
    let one = Rational::one();
    for (i, di) in d.iter().enumerate() {
        if *di <= zero || *di >= one {
            return Err(ArrangementError::WeightOutOfRange {
                index: i + 1,
                value: format_rational(di),
            });
        }
    }
    let total: Rational = d.iter().sum();
    let bound = int(n as i64 + 1);
    Ok(match total.cmp(&bound) {
        std::cmp::Ordering::Less => StabilityClass::LogFano,
        std::cmp::Ordering::Equal => StabilityClass::CalabiYau,
        std::cmp::Ordering::Greater => StabilityClass::GeneralType,
    })
}

/// A torus-fixed point of `(P^n)^m`; entries are in `1..=n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FixedPoint(pub Vec<u8>);

impl FixedPoint {
    pub fn from_index(n: usize, m: usize, mut index: u64) -> Self {
        let base = n as u64 + 1;
        let mut digits = vec![1u8; m];
        for slot in digits.iter_mut().rev() {
            *slot = (index % base) as u8 + 1;
            index /= base;
        }
        FixedPoint(digits)
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    /// Applies `f'_i = f_{perm^{-1}(i)}`, the companion of
    /// [`WeightVector::permuted`] that leaves statistics unchanged.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        FixedPoint(perm.iter().map(|&j| self.0[j]).collect())
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// `(n+1)^m`, or `None` on overflow.
pub fn fixed_point_count(n: usize, m: usize) -> Option<u64> {
    (n as u64 + 1).checked_pow(u32::try_from(m).ok()?)
}

/// Lexicographic iterator over a contiguous index range of fixed points.
#[derive(Debug, Clone)]
pub struct FixedPoints {
    n: usize,
    m: usize,
    range: Range<u64>,
}

impl Iterator for FixedPoints {
    type Item = FixedPoint;

    fn next(&mut self) -> Option<FixedPoint> {
        let i = self.range.next()?;
        Some(FixedPoint::from_index(self.n, self.m, i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.range.size_hint()
    }
}

impl ExactSizeIterator for FixedPoints {}

/// All `(n+1)^m` fixed points in lexicographic order.
pub fn enumerate_fixed_points(n: usize, m: usize) -> Result<FixedPoints, ArrangementError> {
    let total = fixed_point_count(n, m).ok_or(ArrangementError::TooManyFixedPoints { n, m })?;
    Ok(FixedPoints { n, m, range: 0..total })
}

/// The fixed points with lexicographic index in `range`; disjoint ranges give
/// disjoint, deterministic partitions for parallel reduction.
pub fn fixed_point_range(n: usize, m: usize, range: Range<u64>) -> FixedPoints {
    FixedPoints { n, m, range }
}

/// Per-fixed-point weight statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPointStats {
    /// `m_j`, j = 1..=n+1.
    pub counts: Vec<usize>,
    /// `delta_j = sum of d_i over f_i = j`.
    pub deltas: Vec<Rational>,
    /// `xi_j = delta_j - (sum d)/(n+1)`; sums to zero.
    pub xi: Vec<Rational>,
    /// Moment-map coordinates in the simple-root basis, one per `alpha_i`.
    pub lambda: Vec<Rational>,
    /// `(-1)^(m(n+1) - sum_j j m_j)`.
    pub sign: i8,
}

impl FixedPointStats {
    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }
}

pub fn stats(f: &FixedPoint, w: &WeightVector) -> FixedPointStats {
    let n = w.n();
    assert_eq!(f.0.len(), w.m(), "fixed point length must equal m");
    let mut counts = vec![0usize; n + 1];
    let mut deltas = vec![Rational::zero(); n + 1];
    for (&fi, di) in f.0.iter().zip(w.weights()) {
        let j = fi as usize - 1;
        counts[j] += 1;
        deltas[j] += di;
    }
    let total: Rational = deltas.iter().sum();
    let n1 = int(n as i64 + 1);
    let mean = &total / &n1;
    let xi = deltas.iter().map(|dj| dj - &mean).collect();

    // Coefficient of alpha_i in mu(f):
    //   (1 - i/(n+1)) sum_{k<=i} delta_k - (i/(n+1)) sum_{k>i} delta_k
    let mut lambda = Vec::with_capacity(n);
    let mut prefix = Rational::zero();
    for i in 1..=n {
        prefix += &deltas[i - 1];
        let suffix = &total - &prefix;
        let frac = rat(i as i64, n as i64 + 1);
        lambda.push((Rational::one() - &frac) * &prefix - frac * suffix);
    }

    let m = w.m() as i64;
    let weighted: i64 = counts
        .iter()
        .enumerate()
        .map(|(j, &c)| (j as i64 + 1) * c as i64)
        .sum();
    let sign = if (m * (n as i64 + 1) - weighted).rem_euclid(2) == 0 {
        1
    } else {
        -1
    };
    FixedPointStats {
        counts,
        deltas,
        xi,
        lambda,
        sign,
    }
}

/// Chamber of a fixed point relative to the residue cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChamberLabel {
    /// n = 2: `xi_2 < 0` and `xi_3 < 0` (so `lambda_1 > lambda_2 > 0`).
    A,
    /// n = 2: `xi_1 > 0` and `xi_2 > 0` (so `lambda_2 > lambda_1 > 0`).
    B,
    /// n = 1: `delta_1 - delta_2 > 0`.
    FPlus,
    Outside,
    /// Some classifying quantity vanishes.
    Wall,
}

fn label_from_signs(n: usize, signs: &[i8]) -> ChamberLabel {
    if signs.contains(&0) {
        return ChamberLabel::Wall;
    }
    match n {
        1 => {
            if signs[0] > 0 {
                ChamberLabel::FPlus
            } else {
                ChamberLabel::Outside
            }
        }
        _ => {
            if signs[1] < 0 && signs[2] < 0 {
                ChamberLabel::A
            } else if signs[0] > 0 && signs[1] > 0 {
                ChamberLabel::B
            } else {
                ChamberLabel::Outside
            }
        }
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Classifies by `delta_1 - delta_2` (n = 1) or the signs of `xi` (n = 2).
pub fn classify(s: &FixedPointStats) -> Result<ChamberLabel, ArrangementError> {
    match s.n() {
        1 => Ok(label_from_signs(1, &[sign_of(&(&s.deltas[0] - &s.deltas[1]))])),
        2 => {
            let signs: Vec<i8> = s.xi.iter().map(sign_of).collect();
            Ok(label_from_signs(2, &signs))
        }
        n => Err(ArrangementError::UnsupportedRank(n)),
    }
}

/// Chamber counts over all fixed points.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ChamberCensus {
    pub a: u64,
    pub b: u64,
    pub f_plus: u64,
    pub outside: u64,
    pub wall: u64,
}

impl ChamberCensus {
    pub fn record(&mut self, label: ChamberLabel) {
        match label {
            ChamberLabel::A => self.a += 1,
            ChamberLabel::B => self.b += 1,
            ChamberLabel::FPlus => self.f_plus += 1,
            ChamberLabel::Outside => self.outside += 1,
            ChamberLabel::Wall => self.wall += 1,
        }
    }

    pub fn merge(&mut self, other: &ChamberCensus) {
        self.a += other.a;
        self.b += other.b;
        self.f_plus += other.f_plus;
        self.outside += other.outside;
        self.wall += other.wall;
    }

    pub fn total(&self) -> u64 {
        self.a + self.b + self.f_plus + self.outside + self.wall
    }
}

/// Integer type usable by the scaled scan. `i128` covers any realistic weight
/// vector; `BigInt` is the fallback when the common denominator is huge.
pub(crate) trait ScanInt: Clone + Signed + Ord + Send + Sync {
    fn from_big(b: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl ScanInt for i128 {
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ScanInt for BigInt {
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Integer statistics of one fixed point, relative to the common
/// denominator `L` of the weights.
pub(crate) struct ScaledPoint<'a, T> {
    pub digits: &'a [u8],
    pub counts: &'a [usize],
    /// n = 1: `[(delta_1 - delta_2) L]`; n = 2: `[3 xi_j L]` for j = 1..3.
    pub keys: &'a [T],
    pub label: ChamberLabel,
}

pub(crate) struct ScaledScanner<T> {
    n: usize,
    m: usize,
    nums: Vec<T>,
    total: T,
}

impl<T: ScanInt> ScaledScanner<T> {
    pub fn new(w: &WeightVector) -> Option<Self> {
        let (_, nums) = w.scaled_integers();
        let total_big: BigInt = nums.iter().sum();
        // Keys are bounded by (n+1) * total in absolute value.
        let bound = total_big.clone() * (w.n() + 1) * 4;
        T::from_big(&bound)?;
        Some(ScaledScanner {
            n: w.n(),
            m: w.m(),
            nums: nums.iter().map(|x| T::from_big(x)).collect::<Option<_>>()?,
            total: T::from_big(&total_big)?,
        })
    }

    /// Visits every fixed point in `range`, in order.
    pub fn scan(&self, range: Range<u64>, mut visit: impl FnMut(ScaledPoint<'_, T>)) {
        let n1 = self.n + 1;
        let mut digits = vec![1u8; self.m];
        let mut counts = vec![0usize; n1];
        let mut deltas = vec![T::zero(); n1];
        let mut keys = vec![T::zero(); if self.n == 1 { 1 } else { 3 }];
        let mut signs = vec![0i8; keys.len()];
        for index in range {
            let mut rest = index;
            for slot in digits.iter_mut().rev() {
                *slot = (rest % n1 as u64) as u8 + 1;
                rest /= n1 as u64;
            }
            counts.iter_mut().for_each(|c| *c = 0);
            deltas.iter_mut().for_each(|d| *d = T::zero());
            for (&fi, num) in digits.iter().zip(&self.nums) {
                let j = fi as usize - 1;
                counts[j] += 1;
                deltas[j] = deltas[j].clone() + num.clone();
            }
            if self.n == 1 {
                keys[0] = deltas[0].clone() - deltas[1].clone();
            } else {
                let three = T::one() + T::one() + T::one();
                for j in 0..3 {
                    keys[j] = three.clone() * deltas[j].clone() - self.total.clone();
                }
            }
            for (s, k) in signs.iter_mut().zip(&keys) {
                *s = if k.is_zero() {
                    0
                } else if k.is_positive() {
                    1
                } else {
                    -1
                };
            }
            let label = label_from_signs(self.n, &signs);
            visit(ScaledPoint {
                digits: &digits,
                counts: &counts,
                keys: &keys,
                label,
            });
        }
    }
}

fn wall_scan<T: ScanInt>(scanner: &ScaledScanner<T>, total: u64) -> Vec<FixedPoint> {
    let mut walls = Vec::new();
    scanner.scan(0..total, |p| {
        if p.label == ChamberLabel::Wall {
            walls.push(FixedPoint(p.digits.to_vec()));
        }
    });
    walls
}

/// Fixed points on which some classifying quantity vanishes; empty iff the
/// weights are generic.
pub fn wall_check(w: &WeightVector) -> Result<Vec<FixedPoint>, ArrangementError> {
    if w.n() > 2 {
        return Err(ArrangementError::UnsupportedRank(w.n()));
    }
    let total = fixed_point_count(w.n(), w.m()).ok_or(ArrangementError::TooManyFixedPoints {
        n: w.n(),
        m: w.m(),
    })?;
    Ok(match ScaledScanner::<i128>::new(w) {
        Some(s) => wall_scan(&s, total),
        None => wall_scan(&ScaledScanner::<BigInt>::new(w).expect("BigInt always fits"), total),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn wv(n: usize, d: &[(i64, i64)]) -> WeightVector {
        WeightVector::new(n, d.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    #[test]
    fn stability_classes() {
        let w = wv(1, &[(3, 10), (3, 10), (3, 10), (2, 5)]);
        assert_eq!(w.stability_class(), StabilityClass::LogFano);
        let w = wv(2, &[(3, 4); 4]);
        assert_eq!(w.stability_class(), StabilityClass::CalabiYau);
        let w = wv(2, &[(9, 10); 4]);
        assert_eq!(w.stability_class(), StabilityClass::GeneralType);
    }

    #[test]
    fn weight_validation_errors() {
        assert!(matches!(
            WeightVector::new(1, vec![rat(1, 2), int(1), rat(1, 3), rat(1, 3)]),
            Err(ArrangementError::WeightOutOfRange { index: 2, .. })
        ));
        assert!(matches!(
            validate_weights(1, &[rat(1, 2), int(0)]),
            Err(ArrangementError::WeightOutOfRange { index: 2, .. })
        ));
        assert!(matches!(
            WeightVector::new(2, vec![rat(1, 2); 3]),
            Err(ArrangementError::TooFewWeights { needed: 4, got: 3 })
        ));
        assert!(WeightVector::parse(1, "1/2,x,1/3,1/3").is_err());
    }

    #[test]
    fn decimal_and_fraction_parse_agree() {
        let a = WeightVector::parse(1, "0.3,0.3,0.3,0.4").unwrap();
        let b = WeightVector::parse(1, "3/10,3/10,3/10,2/5").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_fixed_points(1, 4).unwrap().count(), 16);
        assert_eq!(enumerate_fixed_points(2, 5).unwrap().count(), 243);
        let empty: Vec<_> = enumerate_fixed_points(2, 0).unwrap().collect();
        assert_eq!(empty, vec![FixedPoint(vec![])]);
        let all: Vec<_> = enumerate_fixed_points(2, 3).unwrap().collect();
        assert_eq!(all[0], FixedPoint(vec![1, 1, 1]));
        assert_eq!(all[1], FixedPoint(vec![1, 1, 2]));
        assert_eq!(all[26], FixedPoint(vec![3, 3, 3]));
        assert!(all.windows(2).all(|p| p[0] < p[1]));
        let tail: Vec<_> = fixed_point_range(2, 3, 20..27).collect();
        assert_eq!(&all[20..], &tail[..]);
    }

    #[test]
    fn stats_by_definition() {
        let w = wv(2, &[(1, 2); 5]);
        let s = stats(&FixedPoint(vec![1, 1, 2, 3, 3]), &w);
        assert_eq!(s.counts, vec![2, 1, 2]);
        assert_eq!(s.deltas, vec![int(1), rat(1, 2), int(1)]);
        // xi_j = delta_j - 5/6
        assert_eq!(s.xi, vec![rat(1, 6), rat(-1, 3), rat(1, 6)]);
        assert_eq!(s.lambda, vec![s.xi[0].clone(), &s.xi[0] + &s.xi[1]]);
        assert_eq!(s.sign, -1);

        let w = wv(1, &[(1, 5), (1, 3), (1, 7), (1, 2)]);
        let s = stats(&FixedPoint(vec![1, 1, 1, 1]), &w);
        assert_eq!(s.counts, vec![4, 0]);
        assert_eq!(s.deltas, vec![w.total(), int(0)]);
        assert_eq!(s.lambda, vec![w.total() / int(2)]);
        assert_eq!(s.sign, 1);
    }

    #[test]
    fn classify_examples() {
        let w = wv(1, &[(3, 10), (3, 10), (3, 10), (2, 5)]);
        let s = stats(&FixedPoint(vec![1, 1, 1, 1]), &w);
        assert_eq!(&s.deltas[0] - &s.deltas[1], rat(13, 10));
        assert_eq!(classify(&s).unwrap(), ChamberLabel::FPlus);

        let s = FixedPointStats {
            counts: vec![1, 1, 1],
            deltas: vec![int(0); 3],
            xi: vec![rat(-1, 6), rat(-1, 12), rat(1, 4)],
            lambda: vec![],
            sign: 1,
        };
        assert_eq!(classify(&s).unwrap(), ChamberLabel::Outside);

        let w = wv(1, &[(1, 3); 4]);
        let s = stats(&FixedPoint(vec![1, 2, 1, 2]), &w);
        assert_eq!(classify(&s).unwrap(), ChamberLabel::Wall);

        let w = wv(3, &[(1, 3); 5]);
        let s = stats(&FixedPoint(vec![1, 2, 3, 4, 1]), &w);
        assert!(classify(&s).is_err());
    }

    #[test]
    fn wall_examples() {
        let w = wv(1, &[(3, 10), (3, 10), (3, 10), (2, 5)]);
        assert!(wall_check(&w).unwrap().is_empty());

        let w = wv(1, &[(1, 2); 4]);
        let walls = wall_check(&w).unwrap();
        assert_eq!(walls.len(), 6);
        assert!(walls
            .iter()
            .all(|f| f.0.iter().filter(|&&e| e == 1).count() == 2));

        // Equal weights on 6 lines: delta/3 = 2/3 is the weight of two lines.
        let w = wv(2, &[(1, 3); 6]);
        assert!(!wall_check(&w).unwrap().is_empty());
        // Equal weights on 4 or 5 lines never hit a wall: delta/3 is not a
        // multiple of the common weight.
        assert!(wall_check(&wv(2, &[(1, 2); 4])).unwrap().is_empty());
        assert!(wall_check(&wv(2, &[(1, 2); 5])).unwrap().is_empty());
    }

    #[test]
    fn wall_check_matches_rational_classification() {
        for w in [
            wv(2, &[(1, 3), (1, 3), (2, 3), (2, 3)]),
            wv(2, &[(1, 5), (2, 7), (3, 11), (1, 2), (4, 9)]),
            wv(1, &[(1, 4), (1, 4), (1, 2), (1, 3), (1, 6)]),
        ] {
            let expected: Vec<_> = enumerate_fixed_points(w.n(), w.m())
                .unwrap()
                .filter(|f| classify(&stats(f, &w)).unwrap() == ChamberLabel::Wall)
                .collect();
            assert_eq!(wall_check(&w).unwrap(), expected);
        }
    }

    #[test]
    fn bigint_scanner_agrees_with_i128() {
        let w = wv(2, &[(1, 3), (2, 7), (3, 11), (1, 2), (4, 13)]);
        let small = ScaledScanner::<i128>::new(&w).unwrap();
        let large = ScaledScanner::<BigInt>::new(&w).unwrap();
        let mut a = Vec::new();
        let mut b = Vec::new();
        small.scan(0..243, |p| a.push((p.label, p.keys.iter().map(|k| k.to_big()).collect::<Vec<_>>())));
        large.scan(0..243, |p| b.push((p.label, p.keys.to_vec())));
        assert_eq!(a, b);
    }

    fn weights_strategy(n: usize) -> impl Strategy<Value = WeightVector> {
        prop::collection::vec((1i64..64, 2i64..=64), n + 2..=n + 5).prop_map(move |raw| {
            let d = raw
                .into_iter()
                .map(|(p, q)| rat(p % (q - 1) + 1, q))
                .collect();
            WeightVector::new(n, d).unwrap()
        })
    }

    proptest! {
        #[test]
        fn xi_sums_to_zero(w in weights_strategy(2), seed in any::<u64>()) {
            let total = fixed_point_count(2, w.m()).unwrap();
            let f = FixedPoint::from_index(2, w.m(), seed % total);
            let s = stats(&f, &w);
            prop_assert_eq!(s.counts.iter().sum::<usize>(), w.m());
            prop_assert_eq!(s.deltas.iter().sum::<Rational>(), w.total());
            prop_assert!(s.xi.iter().sum::<Rational>().is_zero());
        }

        #[test]
        fn permutation_equivariance(w in weights_strategy(2), seed in any::<u64>(), shuffle in any::<u64>()) {
            let m = w.m();
            let mut perm: Vec<usize> = (0..m).collect();
            let mut state = shuffle;
            for i in (1..m).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (state >> 33) as usize % (i + 1));
            }
            let f = FixedPoint::from_index(2, m, seed % fixed_point_count(2, m).unwrap());
            prop_assert_eq!(stats(&f, &w), stats(&f.permuted(&perm), &w.permuted(&perm)));
        }

        #[test]
        fn census_covers_every_point(w in weights_strategy(1)) {
            let mut census = ChamberCensus::default();
            for f in enumerate_fixed_points(1, w.m()).unwrap() {
                census.record(classify(&stats(&f, &w)).unwrap());
            }
            prop_assert_eq!(census.total(), 1u64 << w.m());
        }

        #[test]
        fn generic_rank2_chambers_partition_positive_cone(w in weights_strategy(2)) {
            prop_assume!(w.m() <= 6);
            prop_assume!(wall_check(&w).unwrap().is_empty());
            for f in enumerate_fixed_points(2, w.m()).unwrap() {
                let s = stats(&f, &w);
                let label = classify(&s).unwrap();
                let positive = s.lambda[0].is_positive() && s.lambda[1].is_positive();
                prop_assert_eq!(positive, matches!(label, ChamberLabel::A | ChamberLabel::B));
            }
        }
    }
}
