//! Jeffrey-Kirwan residue engine.
//!
//! The working representation is a finite sum of exponential-polynomial
//! terms with exact rational data. Residues are computed by series
//! coefficient extraction only (a truncated exponential series times a
//! binomial series); no closed-form residue formula is used, so the volume
//! assemblies here serve as an independent oracle for [`crate::closedform`].
//!
//! The positive prescription keeps a pole's contribution iff the exponential
//! slope in the variable being integrated is strictly positive. Variables
//! are integrated in the fixed order `y` first, then `x`. A zero slope next
//! to a pole is an error, never silently dropped.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangements::{
    enumerate_fixed_points, fixed_point_count, fixed_point_range, stats, wall_check, FixedPoint,
    WeightVector,
};
use crate::error::{require_log_fano, VolumeError};
use crate::exactmath::{big, factorial, format_rational, gen_binomial, int, pow, rat, sign_pow, Rational};
use crate::parallel::chunked;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResidueError {
    #[error("zero exponential slope in {variable} next to a pole of order {order} (non-generic input)")]
    NonGeneric { variable: &'static str, order: i64 },
    #[error("invalid argument: {0}")]
    Argument(String),
}

/// `q * e^(mu x) * x^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpTerm1 {
    pub q: Rational,
    pub mu: Rational,
    pub p: i64,
}

/// Canonical sum of [`ExpTerm1`]; terms with equal `(mu, p)` are merged and
/// zero coefficients dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpSum1 {
    terms: BTreeMap<(Rational, i64), Rational>,
}

impl ExpSum1 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: ExpTerm1) {
        add_merged(&mut self.terms, (term.mu, term.p), term.q);
    }

    pub fn extend(&mut self, other: &ExpSum1) {
        for t in other.iter() {
            self.add(t);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ExpTerm1> + '_ {
        self.terms.iter().map(|((mu, p), q)| ExpTerm1 {
            q: q.clone(),
            mu: mu.clone(),
            p: *p,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scaled(&self, c: &Rational) -> ExpSum1 {
        let mut out = ExpSum1::new();
        for mut t in self.iter() {
            t.q *= c;
            out.add(t);
        }
        out
    }
}

impl FromIterator<ExpTerm1> for ExpSum1 {
    fn from_iter<I: IntoIterator<Item = ExpTerm1>>(iter: I) -> Self {
        let mut s = ExpSum1::new();
        for t in iter {
            s.add(t);
        }
        s
    }
}

/// `q * e^(mu_x x + mu_y y) * x^px * y^py * (x+y)^pz`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpTerm2 {
    pub q: Rational,
    pub mu_x: Rational,
    pub mu_y: Rational,
    pub px: i64,
    pub py: i64,
    pub pz: i64,
}

type Key2 = (Rational, Rational, i64, i64, i64);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpSum2 {
    terms: BTreeMap<Key2, Rational>,
}

impl ExpSum2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, t: ExpTerm2) {
        add_merged(&mut self.terms, (t.mu_x, t.mu_y, t.px, t.py, t.pz), t.q);
    }

    pub fn iter(&self) -> impl Iterator<Item = ExpTerm2> + '_ {
        self.terms
            .iter()
            .map(|((mu_x, mu_y, px, py, pz), q)| ExpTerm2 {
                q: q.clone(),
                mu_x: mu_x.clone(),
                mu_y: mu_y.clone(),
                px: *px,
                py: *py,
                pz: *pz,
            })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl FromIterator<ExpTerm2> for ExpSum2 {
    fn from_iter<I: IntoIterator<Item = ExpTerm2>>(iter: I) -> Self {
        let mut s = ExpSum2::new();
        for t in iter {
            s.add(t);
        }
        s
    }
}

fn add_merged<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, q: Rational) {
    if q.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(q);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += q;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// `mu^k / k!`, the `k`-th Taylor coefficient of `e^(mu t)`.
fn exp_coefficient(mu: &Rational, k: i64) -> Rational {
    pow(mu, k as u32) / big(factorial(k as u32))
}

/// Positive residue at `x = 0`.
///
/// A term `q e^(mu x) x^p` with `p <= -1` contributes `q mu^(-p-1)/(-p-1)!`
/// when `mu > 0` and nothing when `mu < 0`; terms without a pole vanish.
pub fn res_plus_1d(sum: &ExpSum1) -> Result<Rational, ResidueError> {
    let mut acc = Rational::zero();
    for t in sum.iter() {
        if t.p >= 0 {
            continue;
        }
        if t.mu.is_zero() {
            return Err(ResidueError::NonGeneric {
                variable: "x",
                order: -t.p,
            });
        }
        if t.mu.is_positive() {
            acc += t.q * exp_coefficient(&t.mu, -t.p - 1);
        }
    }
    Ok(acc)
}

/// Positive residue in `y`, summing the poles at `y = 0` and `y = -x`.
///
/// The pole at `y = 0` is the coefficient of `y^(-py-1)` in
/// `e^(mu_y y) (x+y)^pz`, using the binomial series of `(x+y)^pz` in `y`.
/// The pole at `y = -x` substitutes `u = x + y` and takes the coefficient of
/// `u^(-pz-1)` in `e^(mu_y u) (u-x)^py`, leaving `e^(-mu_y x)` behind.
pub fn inner_res_plus_y(sum: &ExpSum2) -> Result<ExpSum1, ResidueError> {
    let mut out = ExpSum1::new();
    for t in sum.iter() {
        if t.py >= 0 && t.pz >= 0 {
            continue;
        }
        if t.mu_y.is_zero() {
            return Err(ResidueError::NonGeneric {
                variable: "y",
                order: -t.py.min(t.pz),
            });
        }
        if t.mu_y.is_negative() {
            continue;
        }
        if t.py <= -1 {
            let order = -t.py - 1;
            for l in 0..=order {
                let coeff = big(gen_binomial(t.pz, l)) * exp_coefficient(&t.mu_y, order - l);
                out.add(ExpTerm1 {
                    q: &t.q * coeff,
                    mu: t.mu_x.clone(),
                    p: t.px + t.pz - l,
                });
            }
        }
        if t.pz <= -1 {
            let order = -t.pz - 1;
            let mu = &t.mu_x - &t.mu_y;
            for l in 0..=order {
                let coeff = big(gen_binomial(t.py, l) * sign_pow(t.py - l))
                    * exp_coefficient(&t.mu_y, order - l);
                out.add(ExpTerm1 {
                    q: &t.q * coeff,
                    mu: mu.clone(),
                    p: t.px + t.py - l,
                });
            }
        }
    }
    Ok(out)
}

/// `res+_x res+_y [ e^(l1 x + l2 y) / (x^a y^b (x+y)^c) ]`.
pub fn iterated_res_plus(
    lambda1: &Rational,
    lambda2: &Rational,
    a: i64,
    b: i64,
    c: i64,
) -> Result<Rational, ResidueError> {
    let integrand: ExpSum2 = std::iter::once(ExpTerm2 {
        q: Rational::one(),
        mu_x: lambda1.clone(),
        mu_y: lambda2.clone(),
        px: -a,
        py: -b,
        pz: -c,
    })
    .collect();
    res_plus_1d(&inner_res_plus_y(&integrand)?)
}

/// Exponent of the positive root `alpha_ij` in the denominator of `h_f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleOrder {
    pub i: usize,
    pub j: usize,
    pub order: i64,
}

/// The fixed-point contribution
/// `h_f = sign * e^(sum_i c_i alpha_i) / prod_{i<j} alpha_ij^(m_i + m_j - 2)`
/// for the maximal torus of `SU(n+1)` acting on `(P^n)^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MeromorphicDatum {
    pub sign: i8,
    /// Coefficient of each simple root `alpha_1..alpha_n` in the exponent.
    #[serde(with = "crate::exactmath::serde_rational::vec")]
    pub exp_coeffs: Vec<Rational>,
    /// Pairs `i < j` in lexicographic order.
    pub pole_orders: Vec<PoleOrder>,
}

impl MeromorphicDatum {
    pub fn pole_order(&self, i: usize, j: usize) -> Option<i64> {
        self.pole_orders
            .iter()
            .find(|p| p.i == i && p.j == j)
            .map(|p| p.order)
    }
}

/// Builds `h_f` for any `n >= 1`.
pub fn build_hf(f: &FixedPoint, w: &WeightVector) -> MeromorphicDatum {
    let s = stats(f, w);
    let n = w.n();
    let mut pole_orders = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n + 1 {
        for j in i + 1..=n + 1 {
            pole_orders.push(PoleOrder {
                i,
                j,
                order: s.counts[i - 1] as i64 + s.counts[j - 1] as i64 - 2,
            });
        }
    }
    MeromorphicDatum {
        sign: s.sign,
        exp_coeffs: s.lambda,
        pole_orders,
    }
}

/// Overall constant of the localization formula for `n = 1`.
pub fn rank1_prefactor() -> Rational {
    rat(-1, 2)
}

/// Overall constant of the localization formula for `n = 2`.
pub fn rank2_prefactor() -> Rational {
    rat(-1, 6)
}

/// `n_0 / 2` with `n_0 = 1` for the `SU(2)` action on `S^m P^1`.
pub fn dp4_prefactor() -> Rational {
    rat(1, 2)
}

/// The Lie-theoretic constant `(-1)^(s + n_+) / |W|` for `SU(n+1)` with
/// `vol(T) = 1`, where `s = dim G` and `n_+` counts positive roots.
///
/// Documentation only: the volume assemblies use [`rank1_prefactor`] and
/// [`rank2_prefactor`]. This agrees with the rank-2 constant and has the
/// opposite sign from the rank-1 one.
pub fn jk_constant(n: usize) -> Rational {
    let s = (n * (n + 2)) as i64;
    let positive_roots = (n * (n + 1) / 2) as i64;
    Rational::new(
        BigInt::from(sign_pow(s + positive_roots)),
        factorial(n as u32 + 1),
    )
}

fn require_generic(w: &WeightVector) -> Result<(), VolumeError> {
    let walls = wall_check(w)?;
    if walls.is_empty() {
        Ok(())
    } else {
        Err(VolumeError::NonGeneric { points: walls })
    }
}

fn sum_fixed_points<F>(w: &WeightVector, threads: usize, term: F) -> Result<Rational, VolumeError>
where
    F: Fn(&FixedPoint) -> Result<Rational, ResidueError> + Sync,
{
    let total = fixed_point_count(w.n(), w.m()).ok_or(VolumeError::Argument(
        "too many fixed points".to_string(),
    ))?;
    let summed = chunked(
        total,
        threads,
        |range| -> Result<Rational, ResidueError> {
            let mut acc = Rational::zero();
            for f in fixed_point_range(w.n(), w.m(), range) {
                acc += term(&f)?;
            }
            Ok(acc)
        },
        |a, b| Ok(a? + b?),
    )?;
    Ok(summed.unwrap_or_else(|| Ok(Rational::zero()))?)
}

/// Rank-one volume as a residue sum over all `2^m` fixed points.
pub fn jk_volume_rank1(w: &WeightVector) -> Result<Rational, VolumeError> {
    jk_volume_rank1_with(w, 1)
}

pub fn jk_volume_rank1_with(w: &WeightVector, threads: usize) -> Result<Rational, VolumeError> {
    require_log_fano(w, 1)?;
    require_generic(w)?;
    let sum = sum_fixed_points(w, threads, |f| {
        let h = build_hf(f, w);
        let order = h.pole_order(1, 2).expect("n = 1 has one root");
        // Residue variable scaled so that the slope is delta_1 - delta_2.
        let integrand: ExpSum1 = std::iter::once(ExpTerm1 {
            q: Rational::one(),
            mu: &h.exp_coeffs[0] * int(2),
            p: -order,
        })
        .collect();
        Ok(res_plus_1d(&integrand)? * int(h.sign as i64))
    })?;
    Ok(rank1_prefactor() * sum)
}

/// Rank-two volume as an iterated residue sum over all `3^m` fixed points.
pub fn jk_volume_rank2(w: &WeightVector) -> Result<Rational, VolumeError> {
    jk_volume_rank2_with(w, 1)
}

pub fn jk_volume_rank2_with(w: &WeightVector, threads: usize) -> Result<Rational, VolumeError> {
    require_log_fano(w, 2)?;
    require_generic(w)?;
    let sum = sum_fixed_points(w, threads, |f| {
        let h = build_hf(f, w);
        let a = h.pole_order(1, 2).expect("alpha_1");
        let b = h.pole_order(2, 3).expect("alpha_2");
        let c = h.pole_order(1, 3).expect("alpha_1 + alpha_2");
        Ok(iterated_res_plus(&h.exp_coeffs[0], &h.exp_coeffs[1], a, b, c)? * int(h.sign as i64))
    })?;
    Ok(rank2_prefactor() * sum)
}

/// Finite Laurent polynomial in one variable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Laurent {
    coeffs: BTreeMap<i64, Rational>,
}

impl Laurent {
    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut l = Laurent::default();
        add_merged(&mut l.coeffs, exp, c);
        l
    }

    pub fn add(&mut self, other: &Laurent) {
        for (e, c) in &other.coeffs {
            add_merged(&mut self.coeffs, *e, c.clone());
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                add_merged(&mut out.coeffs, e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }
}

/// `S(m)` for the quartic del Pezzo moduli `S^m P^1 // SL(2)`, by extracting
/// the `x^-1` coefficient of `4x^2 * sum_k i*eta / e_k` over the fixed points
/// `e_k` with positive moment `m - 2k`.
///
/// At `e_k` the numerator is `(m-2k)^(m-3) x^(m-3)` and the Euler class is
/// `2^m k! (m-k)! x^m` (their common sign `(-1)^(m-3)` cancels).
pub fn dp4_residue_sum(m: usize) -> Result<Rational, ResidueError> {
    if m < 4 {
        return Err(ResidueError::Argument(format!("need m >= 4, got {m}")));
    }
    let mi = m as i64;
    let mut fixed_sum = Laurent::default();
    for k in 0..=m {
        let moment = mi - 2 * k as i64;
        if moment <= 0 {
            continue;
        }
        let numerator = Laurent::monomial(
            big(num_traits::pow(BigInt::from(moment), m - 3)),
            mi - 3,
        );
        let euler = BigInt::from(2).pow(m as u32) * factorial(k as u32) * factorial((m - k) as u32);
        let inverse_euler = Laurent::monomial(Rational::new(BigInt::one(), euler), -mi);
        fixed_sum.add(&numerator.mul(&inverse_euler));
    }
    let weyl = Laurent::monomial(int(4), 2);
    Ok(dp4_prefactor() * weyl.mul(&fixed_sum).coeff(-1))
}

/// JSON-friendly view used by the `dump --dump-hf` mode.
#[derive(Debug, Clone, Serialize)]
pub struct HfDumpEntry {
    pub f: FixedPoint,
    #[serde(flatten)]
    pub datum: MeromorphicDatum,
}

pub fn dump_hf(w: &WeightVector) -> Result<Vec<HfDumpEntry>, VolumeError> {
    Ok(enumerate_fixed_points(w.n(), w.m())?
        .map(|f| {
            let datum = build_hf(&f, w);
            HfDumpEntry { f, datum }
        })
        .collect())
}

impl std::fmt::Display for ExpTerm1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} e^({} x) x^{}",
            format_rational(&self.q),
            format_rational(&self.mu),
            self.p
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one_term(q: Rational, mu: Rational, p: i64) -> ExpSum1 {
        std::iter::once(ExpTerm1 { q, mu, p }).collect()
    }

    fn two_term(mu_y: Rational, py: i64, pz: i64) -> ExpSum2 {
        std::iter::once(ExpTerm2 {
            q: int(1),
            mu_x: int(0),
            mu_y,
            px: 0,
            py,
            pz,
        })
        .collect()
    }

    #[test]
    fn one_dimensional_residues() {
        assert_eq!(res_plus_1d(&one_term(int(1), int(2), -3)).unwrap(), int(2));
        assert_eq!(res_plus_1d(&one_term(int(1), int(-1), -5)).unwrap(), int(0));
        assert_eq!(res_plus_1d(&one_term(int(3), int(5), 2)).unwrap(), int(0));
        assert_eq!(
            res_plus_1d(&one_term(int(1), int(0), -1)),
            Err(ResidueError::NonGeneric { variable: "x", order: 1 })
        );
        // zero slope without a pole is fine
        assert_eq!(res_plus_1d(&one_term(int(1), int(0), 0)).unwrap(), int(0));
    }

    #[test]
    fn canonical_form_merges() {
        let mut s = ExpSum1::new();
        s.add(ExpTerm1 { q: int(2), mu: rat(1, 2), p: -1 });
        s.add(ExpTerm1 { q: int(-2), mu: rat(1, 2), p: -1 });
        assert!(s.is_empty());
        s.add(ExpTerm1 { q: int(1), mu: rat(1, 2), p: -1 });
        s.add(ExpTerm1 { q: int(1), mu: rat(2, 4), p: -1 });
        assert_eq!(s.len(), 1);
        assert_eq!(s.iter().next().unwrap().q, int(2));
    }

    #[test]
    fn inner_residue_two_simple_poles() {
        // e^y / (y (x+y)) -> 1/x - e^{-x}/x
        let out = inner_res_plus_y(&two_term(int(1), -1, -1)).unwrap();
        let expected: ExpSum1 = [
            ExpTerm1 { q: int(1), mu: int(0), p: -1 },
            ExpTerm1 { q: int(-1), mu: int(-1), p: -1 },
        ]
        .into_iter()
        .collect();
        assert_eq!(out, expected);
    }

    #[test]
    fn inner_residue_double_pole_at_origin() {
        let out = inner_res_plus_y(&two_term(int(2), -2, 0)).unwrap();
        let expected: ExpSum1 = std::iter::once(ExpTerm1 { q: int(2), mu: int(0), p: 0 }).collect();
        assert_eq!(out, expected);
    }

    #[test]
    fn inner_residue_negative_slope_and_zero_slope() {
        assert!(inner_res_plus_y(&two_term(int(-1), -1, -1)).unwrap().is_empty());
        assert!(matches!(
            inner_res_plus_y(&two_term(int(0), -1, -1)),
            Err(ResidueError::NonGeneric { variable: "y", .. })
        ));
        assert!(inner_res_plus_y(&two_term(int(0), 1, 2)).unwrap().is_empty());
    }

    #[test]
    fn iterated_residue_gates() {
        assert_eq!(iterated_res_plus(&int(1), &rat(-1, 3), 3, 3, 3).unwrap(), int(0));
        assert_eq!(iterated_res_plus(&rat(1, 3), &rat(1, 5), -1, 0, 0).unwrap(), int(0));
        assert_eq!(iterated_res_plus(&rat(1, 3), &rat(1, 5), -2, -1, 0).unwrap(), int(0));
    }

    /// The iterated residue must agree with the explicit two-chamber
    /// expression obtained by differentiating the integrand by hand:
    /// `[l1 > l2 > 0] R1 + [l2 > l1 > 0] R2` in the `lambda` variables.
    fn chamber_reference(l1: &Rational, l2: &Rational, a: i64, b: i64, c: i64) -> Rational {
        let fact = |k: i64| big(factorial(k as u32));
        let ff = |z: i64, k: i64| big(crate::exactmath::falling_factorial(z, k).unwrap());
        let origin_part = || {
            let mut s = Rational::zero();
            for j in (1 - a - c).max(0)..b {
                s += ff(-c, j) * pow(l1, (a + c + j - 1) as u32) * pow(l2, (b - j - 1) as u32)
                    / (fact(j) * fact(b - j - 1) * fact(a + c + j - 1));
            }
            s
        };
        let antidiagonal_part = || {
            let mut s = Rational::zero();
            let diff = l1 - l2;
            for j in (1 - a - b).max(0)..c {
                s += int(sign_pow(b + j))
                    * ff(-b, j)
                    * pow(l2, (c - j - 1) as u32)
                    * pow(&diff, (a + b + j - 1) as u32)
                    / (fact(j) * fact(c - j - 1) * fact(a + b + j - 1));
            }
            s
        };
        let zero = Rational::zero();
        if *l1 > *l2 && *l2 > zero {
            origin_part() + antidiagonal_part()
        } else if *l2 > *l1 && *l1 > zero {
            origin_part()
        } else {
            zero
        }
    }

    proptest! {
        #[test]
        fn iterated_residue_matches_chamber_expression(
            p1 in -60i64..60, q1 in 1i64..30, p2 in -60i64..60, q2 in 1i64..30,
            a in 2i64..=5, b in 2i64..=5, c in 2i64..=5,
        ) {
            let l1 = rat(p1, q1);
            let l2 = rat(p2, q2);
            prop_assume!(!l1.is_zero() && !l2.is_zero() && l1 != l2);
            prop_assert_eq!(
                iterated_res_plus(&l1, &l2, a, b, c).unwrap(),
                chamber_reference(&l1, &l2, a, b, c)
            );
        }

        #[test]
        fn slope_scaling(
            terms in prop::collection::vec((-20i64..20, -20i64..20, 1i64..9, -6i64..3), 1..6),
            tp in 1i64..10, tq in 1i64..10,
        ) {
            let sum: ExpSum1 = terms.iter()
                .filter(|(_, mu, _, _)| *mu != 0)
                .map(|&(q, mu, den, p)| ExpTerm1 { q: int(q), mu: rat(mu, den), p })
                .collect();
            let t = rat(tp, tq);
            let scaled: ExpSum1 = sum.iter()
                .map(|x| ExpTerm1 { mu: &x.mu * &t, q: x.q * pow(&t, (-x.p - 1).max(0) as u32).recip(), p: x.p })
                .collect();
            // Scaling every slope by t multiplies a pole term of order k+1 by t^k.
            prop_assert_eq!(res_plus_1d(&scaled).unwrap(), res_plus_1d(&sum).unwrap());

            // Reflecting x -> -x swaps the positive and negative cones; the
            // two halves add up to the full residue at the origin.
            let reflected: ExpSum1 = sum.iter()
                .map(|x| ExpTerm1 { mu: -x.mu.clone(), q: x.q.clone() * int(sign_pow(-x.p - 1)), p: x.p })
                .collect();
            let full: Rational = sum.iter()
                .filter(|x| x.p <= -1)
                .map(|x| x.q.clone() * exp_coefficient(&x.mu, -x.p - 1))
                .sum();
            prop_assert_eq!(res_plus_1d(&sum).unwrap() + res_plus_1d(&reflected).unwrap(), full);
        }

        #[test]
        fn inner_residue_is_linear(
            a in prop::collection::vec((-9i64..9, 1i64..9, -4i64..2, -4i64..2), 1..4),
            b in prop::collection::vec((-9i64..9, 1i64..9, -4i64..2, -4i64..2), 1..4),
        ) {
            let mk = |v: &Vec<(i64, i64, i64, i64)>| -> ExpSum2 {
                v.iter().map(|&(q, mu, py, pz)| ExpTerm2 {
                    q: int(q), mu_x: rat(1, 7), mu_y: rat(mu, 3), px: -1, py, pz,
                }).collect()
            };
            let (sa, sb) = (mk(&a), mk(&b));
            let mut both = sa.clone();
            for t in sb.iter() { both.add(t); }
            let mut expected = inner_res_plus_y(&sa).unwrap();
            expected.extend(&inner_res_plus_y(&sb).unwrap());
            prop_assert_eq!(inner_res_plus_y(&both).unwrap(), expected);
        }
    }

    #[test]
    fn hf_examples() {
        let w = WeightVector::new(1, vec![rat(1, 5), rat(1, 3), rat(2, 7), rat(1, 2)]).unwrap();
        let h = build_hf(&FixedPoint(vec![1, 1, 1, 1]), &w);
        assert_eq!(h.sign, 1);
        assert_eq!(h.pole_orders, vec![PoleOrder { i: 1, j: 2, order: 2 }]);
        assert_eq!(h.exp_coeffs, vec![w.total() / int(2)]);

        let w = WeightVector::new(2, vec![rat(1, 2); 4]).unwrap();
        let h = build_hf(&FixedPoint(vec![1, 2, 3, 1]), &w);
        assert_eq!(h.pole_order(1, 2), Some(1));
        assert_eq!(h.pole_order(2, 3), Some(0));
        assert_eq!(h.pole_order(1, 3), Some(1));

        let w = WeightVector::new(3, vec![rat(1, 3); 5]).unwrap();
        for f in enumerate_fixed_points(3, 5).unwrap() {
            let h = build_hf(&f, &w);
            assert_eq!(h.pole_orders.len(), 6);
            assert_eq!(h.pole_orders.iter().map(|p| p.order).sum::<i64>(), 3);
        }
    }

    #[test]
    fn hf_rank1_reduction_exhaustive() {
        let w = WeightVector::new(1, vec![rat(1, 5), rat(1, 3), rat(2, 7), rat(1, 2), rat(3, 8)]).unwrap();
        for f in enumerate_fixed_points(1, 5).unwrap() {
            let s = stats(&f, &w);
            let h = build_hf(&f, &w);
            assert_eq!(h.sign as i64, sign_pow(s.counts[0] as i64));
            assert_eq!(h.pole_order(1, 2), Some(3));
            assert_eq!(h.exp_coeffs[0], (&s.deltas[0] - &s.deltas[1]) / int(2));
        }
    }

    #[test]
    fn hf_rank2_reduction_exhaustive() {
        let ws = [
            vec![rat(1, 5), rat(1, 3), rat(2, 7), rat(1, 2)],
            vec![rat(1, 5), rat(1, 3), rat(2, 7), rat(1, 2), rat(3, 8)],
            vec![rat(1, 5), rat(1, 3), rat(2, 7), rat(1, 2), rat(3, 8), rat(1, 9)],
        ];
        for d in ws {
            let w = WeightVector::new(2, d).unwrap();
            for f in enumerate_fixed_points(2, w.m()).unwrap() {
                let s = stats(&f, &w);
                let h = build_hf(&f, &w);
                let (m1, m2, m3) = (s.counts[0] as i64, s.counts[1] as i64, s.counts[2] as i64);
                assert_eq!(h.sign as i64, sign_pow(m2));
                assert_eq!(h.sign as i64, sign_pow(w.m() as i64 - m1 - 2 * m2 - 3 * m3));
                assert_eq!(h.pole_order(1, 2), Some(m1 + m2 - 2));
                assert_eq!(h.pole_order(2, 3), Some(m2 + m3 - 2));
                assert_eq!(h.pole_order(1, 3), Some(m1 + m3 - 2));
                let delta = w.total();
                assert_eq!(h.exp_coeffs[0], (int(2) * &s.deltas[0] - &s.deltas[1] - &s.deltas[2]) / int(3));
                assert_eq!(h.exp_coeffs[1], &delta / int(3) - &s.deltas[2]);
            }
        }
    }

    #[test]
    fn datum_json_shape() {
        let w = WeightVector::new(2, vec![rat(1, 2); 4]).unwrap();
        let h = build_hf(&FixedPoint(vec![1, 2, 3, 1]), &w);
        let v: serde_json::Value = serde_json::to_value(&h).unwrap();
        assert_eq!(v["sign"], -1);
        assert_eq!(v["expCoeffs"][0], "1/3");
        assert_eq!(v["poleOrders"][0]["order"], 1);
        let back: MeromorphicDatum = serde_json::from_value(v).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn rank1_pinned_value() {
        let w = WeightVector::parse(1, "3/10,3/10,3/10,2/5").unwrap();
        assert_eq!(jk_volume_rank1(&w).unwrap(), rat(1, 2));
        let w = WeightVector::parse(1, "1/5,1/5,1/5,4/15").unwrap();
        assert_eq!(jk_volume_rank1(&w).unwrap(), rat(1, 3));
    }

    /// Hand enumeration over the 16 fixed points of the pinned example,
    /// grouped by the number of points sent to the first vertex.
    #[test]
    fn rank1_pinned_value_by_hand() {
        // |I_1| = 4: 13/10; |I_1| = 3: -(3*7/10 + 5/10); |I_1| = 2: 3 * 1/10.
        let chamber_sum = rat(13, 10) - (rat(21, 10) + rat(5, 10)) + rat(3, 10);
        assert_eq!(chamber_sum, int(-1));
        assert_eq!(rat(-1, 2) * chamber_sum, rat(1, 2));
    }

    #[test]
    fn residue_volume_rejects_bad_input() {
        let w = WeightVector::parse(1, "2/5,2/5,2/5,2/5").unwrap();
        assert!(matches!(jk_volume_rank1(&w), Err(VolumeError::NonGeneric { .. })));
        let w = WeightVector::parse(2, "3/4,3/4,3/4,3/4").unwrap();
        assert!(matches!(jk_volume_rank2(&w), Err(VolumeError::NotLogFano(_))));
        let w = WeightVector::parse(2, "1/3,1/3,1/3,1/3,1/3,1/3").unwrap();
        assert!(matches!(jk_volume_rank2(&w), Err(VolumeError::NonGeneric { .. })));
        assert!(matches!(jk_volume_rank1(&WeightVector::parse(2, "1/2,1/3,1/5,1/7").unwrap()), Err(VolumeError::WrongRank { .. })));
    }

    #[test]
    fn rank2_point_quotient() {
        // Four lines in general position: the quotient is a single point.
        let w = WeightVector::parse(2, "1/2,3/5,7/10,4/5").unwrap();
        assert_eq!(jk_volume_rank2(&w).unwrap(), int(1));
    }

    #[test]
    fn rank2_threads_do_not_change_result() {
        let w = WeightVector::parse(2, "13/64,41/64,29/64,50/64,37/64,1/9").unwrap();
        assert_eq!(jk_volume_rank2_with(&w, 1).unwrap(), jk_volume_rank2_with(&w, 4).unwrap());
    }

    #[test]
    fn dp4_residue_values() {
        assert_eq!(dp4_residue_sum(5).unwrap(), rat(1, 24));
        assert!(dp4_residue_sum(3).is_err());
    }

    #[test]
    fn lie_constant() {
        assert_eq!(jk_constant(2), rank2_prefactor());
        assert_eq!(jk_constant(1), -rank1_prefactor());
    }

    #[test]
    fn laurent_arithmetic() {
        let a = Laurent::monomial(int(2), -3);
        let b = Laurent::monomial(rat(1, 2), 2);
        assert_eq!(a.mul(&b).coeff(-1), int(1));
        let mut c = a.clone();
        c.add(&Laurent::monomial(int(-2), -3));
        assert_eq!(c, Laurent::default());
    }
}
