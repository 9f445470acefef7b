//! Closed-form volumes: weighted points on the line, line arrangements in the
//! plane, and the quartic del Pezzo family, plus the CM rescaling.
//!
//! The arrangement sums run over integer-scaled keys (see
//! [`crate::arrangements`]) so the hot loop never touches a rational. With
//! `L` the common denominator of the weights:
//!
//! * n = 1: `vol = -sum_{F+} (-1)^m1 Y^(m-3) / (2 (m-3)! L^(m-3))`, `Y = (delta_1 - delta_2) L`;
//! * n = 2: `vol = -sum P_f(X) / (6 D! (3L)^D)`, `D = 2m-8`, `X_j = 3 xi_j L`,
//!   where `P_f` is the chamber polynomial selected by `f`'s counts.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangements::{
    fixed_point_count, stats, ChamberCensus, ChamberLabel, FixedPoint, ScanInt, ScaledScanner,
    WeightVector, classify, enumerate_fixed_points,
};
use crate::blowupring::dp4_c_ring;
use crate::error::{require_log_fano, VolumeError};
use crate::exactmath::{
    approx_decimal, big, factorial, format_rational, gen_binomial, int, pow, sign_pow, Rational,
};
use crate::parallel::chunked;
use crate::residues::{dp4_residue_sum, jk_volume_rank1_with, jk_volume_rank2_with};

/// Which pair of chamber coordinates a rank-two fixed point contributes with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank2Chamber {
    /// Polynomial in `(xi_2, xi_3)`: `sum_i c_i xi_2^i xi_3^(D-i)`.
    A,
    /// Polynomial in `(xi_1, xi_2)`: `sum_i c_i xi_1^(D-i) xi_2^i`.
    B,
}

/// How out-of-range binomials are removed from the chamber coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientRule {
    /// Sum over the full range `0..=D` and let the extended binomial vanish.
    Convention,
    /// Restrict each sum to the indices where every binomial is in range.
    Clipped,
}

/// `C(p, q)` for `0 <= q <= p`, zero otherwise.
fn choose(p: i64, q: i64) -> BigInt {
    if q < 0 || p < q {
        BigInt::zero()
    } else {
        gen_binomial(p, q)
    }
}

/// Coefficients `c_0..=c_D` of the chamber polynomial for counts
/// `(m1, m2, m3)`, without the `(-1)^m2 / D!` factor.
///
/// With `b = m2+m3-2` and `e = m+m2-5`:
///
/// * A: `C(D,i) [C(e-1-i, b-1) + (-1)^(b+e+i) C(-b, i-e)]`;
/// * B: `C(D,i) C(e-1-i, b-1-i)`.
///
/// The second A-term only survives for `b <= 0`; it is the contribution of
/// the pole at `y = -x` once the pole at the origin disappears.
pub fn rank2_coefficients(
    counts: [usize; 3],
    chamber: Rank2Chamber,
    rule: CoefficientRule,
) -> Vec<BigInt> {
    let [m1, m2, m3] = counts.map(|c| c as i64);
    let m = m1 + m2 + m3;
    let d = 2 * m - 8;
    let b = m2 + m3 - 2;
    let e = m + m2 - 5;
    (0..=d)
        .map(|i| {
            let inner = match (chamber, rule) {
                (Rank2Chamber::A, CoefficientRule::Convention) => {
                    gen_binomial(e - 1 - i, b - 1)
                        + sign_pow(b + e + i) * gen_binomial(-b, i - e)
                }
                (Rank2Chamber::A, CoefficientRule::Clipped) => {
                    let mut v = if i < e { choose(e - 1 - i, b - 1) } else { BigInt::zero() };
                    if b <= 0 && e <= i && i <= e - b {
                        v += sign_pow(b + e + i) * choose(-b, i - e);
                    }
                    v
                }
                (Rank2Chamber::B, CoefficientRule::Convention) => gen_binomial(e - 1 - i, b - 1 - i),
                (Rank2Chamber::B, CoefficientRule::Clipped) => {
                    if i < b {
                        gen_binomial(e - 1 - i, b - 1 - i)
                    } else {
                        BigInt::zero()
                    }
                }
            };
            gen_binomial(d, i) * inner
        })
        .collect()
}

/// `sum_i c_i hi^i lo^(D-i)`.
fn eval_homogeneous<T: ScanInt>(coeffs: &[T], hi: &T, lo: &T, lo_powers: &mut Vec<T>) -> T {
    let d = coeffs.len() - 1;
    lo_powers.clear();
    lo_powers.push(T::one());
    for k in 1..=d {
        let next = lo_powers[k - 1].clone() * lo.clone();
        lo_powers.push(next);
    }
    let mut acc = T::zero();
    for (i, c) in coeffs.iter().enumerate().rev() {
        acc = acc * hi.clone();
        if !c.is_zero() {
            acc = acc + c.clone() * lo_powers[d - i].clone();
        }
    }
    acc
}

struct Rank2Tables<T> {
    m: usize,
    /// Indexed by `m2 * (m+1) + m3`.
    a: Vec<Vec<T>>,
    b: Vec<Vec<T>>,
}

impl<T: ScanInt> Rank2Tables<T> {
    fn new(m: usize) -> Option<Self> {
        let mut a = vec![Vec::new(); (m + 1) * (m + 1)];
        let mut b = vec![Vec::new(); (m + 1) * (m + 1)];
        for m2 in 0..=m {
            for m3 in 0..=m - m2 {
                let counts = [m - m2 - m3, m2, m3];
                let conv = |c: Vec<BigInt>| c.iter().map(T::from_big).collect::<Option<Vec<T>>>();
                a[m2 * (m + 1) + m3] =
                    conv(rank2_coefficients(counts, Rank2Chamber::A, CoefficientRule::Convention))?;
                b[m2 * (m + 1) + m3] =
                    conv(rank2_coefficients(counts, Rank2Chamber::B, CoefficientRule::Convention))?;
            }
        }
        Some(Rank2Tables { m, a, b })
    }

    fn max_abs_sum(&self) -> BigInt {
        self.a
            .iter()
            .chain(&self.b)
            .map(|c| c.iter().map(|x| x.to_big().abs()).sum::<BigInt>())
            .max()
            .unwrap_or_default()
    }
}

struct ScanPartial<T> {
    sum: T,
    census: ChamberCensus,
    walls: Vec<FixedPoint>,
}

impl<T: ScanInt> ScanPartial<T> {
    fn empty() -> Self {
        ScanPartial {
            sum: T::zero(),
            census: ChamberCensus::default(),
            walls: Vec::new(),
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.sum = self.sum + other.sum;
        self.census.merge(&other.census);
        self.walls.extend(other.walls);
        self
    }
}

/// Closed-form volume together with the chamber counts seen by the scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedOutcome {
    pub volume: Rational,
    pub census: ChamberCensus,
}

fn point_total(w: &WeightVector) -> Result<u64, VolumeError> {
    fixed_point_count(w.n(), w.m())
        .ok_or_else(|| VolumeError::Argument(format!("(n+1)^m too large for m = {}", w.m())))
}

fn finish<T: ScanInt>(partial: Option<ScanPartial<T>>) -> Result<(BigInt, ChamberCensus), VolumeError> {
    let p = partial.unwrap_or_else(ScanPartial::empty);
    if !p.walls.is_empty() {
        return Err(VolumeError::NonGeneric { points: p.walls });
    }
    Ok((p.sum.to_big(), p.census))
}

fn scan_rank1<T: ScanInt>(
    w: &WeightVector,
    scanner: &ScaledScanner<T>,
    threads: usize,
) -> Result<(BigInt, ChamberCensus), VolumeError> {
    let exp = w.m() - 3;
    let partial = chunked(
        point_total(w)?,
        threads,
        |range| {
            let mut acc = ScanPartial::<T>::empty();
            scanner.scan(range, |p| {
                acc.census.record(p.label);
                match p.label {
                    ChamberLabel::FPlus => {
                        let term = num_traits::pow(p.keys[0].clone(), exp);
                        acc.sum = if p.counts[0] % 2 == 0 {
                            acc.sum.clone() + term
                        } else {
                            acc.sum.clone() - term
                        };
                    }
                    ChamberLabel::Wall => acc.walls.push(FixedPoint(p.digits.to_vec())),
                    _ => {}
                }
            });
            acc
        },
        ScanPartial::merge,
    )?;
    finish(partial)
}

fn scan_rank2<T: ScanInt>(
    w: &WeightVector,
    scanner: &ScaledScanner<T>,
    tables: &Rank2Tables<T>,
    threads: usize,
) -> Result<(BigInt, ChamberCensus), VolumeError> {
    let stride = tables.m + 1;
    let partial = chunked(
        point_total(w)?,
        threads,
        |range| {
            let mut acc = ScanPartial::<T>::empty();
            let mut powers = Vec::new();
            scanner.scan(range, |p| {
                acc.census.record(p.label);
                let slot = p.counts[1] * stride + p.counts[2];
                let term = match p.label {
                    ChamberLabel::A => {
                        eval_homogeneous(&tables.a[slot], &p.keys[1], &p.keys[2], &mut powers)
                    }
                    ChamberLabel::B => {
                        eval_homogeneous(&tables.b[slot], &p.keys[1], &p.keys[0], &mut powers)
                    }
                    ChamberLabel::Wall => {
                        acc.walls.push(FixedPoint(p.digits.to_vec()));
                        return;
                    }
                    _ => return,
                };
                acc.sum = if p.counts[1] % 2 == 0 {
                    acc.sum.clone() + term
                } else {
                    acc.sum.clone() - term
                };
            });
            acc
        },
        ScanPartial::merge,
    )?;
    finish(partial)
}

/// `2^126` — headroom below `i128::MAX` for the accumulated sum.
fn fits_i128(bound: &BigInt) -> bool {
    *bound < (BigInt::one() << 126u32)
}

/// Bound on `|key|` over all fixed points: `|3 xi_j L| <= 2 delta L`.
fn key_bound(w: &WeightVector) -> BigInt {
    let (_, nums) = w.scaled_integers();
    nums.iter().sum::<BigInt>() * 2
}

/// Theorem-level formula for weighted points on `P^1`:
/// `-1/(2(m-3)!) sum_{F+} (-1)^m1 (delta_1 - delta_2)^(m-3)`.
pub fn vol1_closed(w: &WeightVector) -> Result<Rational, VolumeError> {
    Ok(vol1_closed_with(w, 1)?.volume)
}

pub fn vol1_closed_with(w: &WeightVector, threads: usize) -> Result<ClosedOutcome, VolumeError> {
    require_log_fano(w, 1)?;
    let exp = w.m() - 3;
    let bound = num_traits::pow(key_bound(w), exp) * point_total(w)?;
    let fast = if fits_i128(&bound) { ScaledScanner::<i128>::new(w) } else { None };
    let (sum, census) = match fast {
        Some(s) => scan_rank1(w, &s, threads)?,
        None => scan_rank1(w, &ScaledScanner::<BigInt>::new(w).expect("BigInt scanner"), threads)?,
    };
    let (lcm, _) = w.scaled_integers();
    let denom = BigInt::from(2) * factorial(exp as u32) * num_traits::pow(lcm, exp);
    Ok(ClosedOutcome {
        volume: -Rational::new(sum, denom),
        census,
    })
}

/// Chamber formula for line arrangements in `P^2`; see [`rank2_coefficients`].
pub fn vol2_closed(w: &WeightVector) -> Result<Rational, VolumeError> {
    Ok(vol2_closed_with(w, 1)?.volume)
}

pub fn vol2_closed_with(w: &WeightVector, threads: usize) -> Result<ClosedOutcome, VolumeError> {
    require_log_fano(w, 2)?;
    let m = w.m();
    let d = 2 * m - 8;
    let big_tables = Rank2Tables::<BigInt>::new(m).expect("BigInt tables");
    let bound = big_tables.max_abs_sum() * num_traits::pow(key_bound(w), d) * point_total(w)?;
    let fast = if fits_i128(&bound) {
        ScaledScanner::<i128>::new(w).zip(Rank2Tables::<i128>::new(m))
    } else {
        None
    };
    let (sum, census) = match fast {
        Some((s, t)) => scan_rank2(w, &s, &t, threads)?,
        None => scan_rank2(
            w,
            &ScaledScanner::<BigInt>::new(w).expect("BigInt scanner"),
            &big_tables,
            threads,
        )?,
    };
    let (lcm, _) = w.scaled_integers();
    let denom = BigInt::from(6) * factorial(d as u32) * num_traits::pow(lcm * 3, d);
    Ok(ClosedOutcome {
        volume: -Rational::new(sum, denom),
        census,
    })
}

/// The rank-two formula transcribed term by term as it is usually printed:
/// `j` over `0..=2m-8`, bottom index `m1+m2-3` in chamber B and the `B`
/// monomial written `xi_1^j xi_2^(2m-8-j)`.
///
/// This does not agree with the residue oracle in general (it drops the
/// `y = -x` pole when `m2+m3 <= 2` and uses binomial symmetry with a
/// negative upper index); it is kept so that reports can show the
/// difference. Use [`vol2_closed`] for volumes.
pub fn vol2_as_printed(w: &WeightVector) -> Result<Rational, VolumeError> {
    require_log_fano(w, 2)?;
    let m = w.m() as i64;
    let d = 2 * m - 8;
    let mut acc = Rational::zero();
    let mut walls = Vec::new();
    for f in enumerate_fixed_points(2, w.m())? {
        let s = stats(&f, w);
        let label = classify(&s)?;
        let [m1, m2, m3] = [0, 1, 2].map(|j| s.counts[j] as i64);
        let mut term = Rational::zero();
        match label {
            ChamberLabel::A => {
                for j in 0..=d {
                    term += big(gen_binomial(d, j) * gen_binomial(m + m2 - 6 - j, m2 + m3 - 3))
                        * pow(&s.xi[1], j as u32)
                        * pow(&s.xi[2], (d - j) as u32);
                }
            }
            ChamberLabel::B => {
                for j in 0..=d {
                    term += big(gen_binomial(d, j) * gen_binomial(m + m2 - 6 - j, m1 + m2 - 3))
                        * pow(&s.xi[0], j as u32)
                        * pow(&s.xi[1], (d - j) as u32);
                }
            }
            ChamberLabel::Wall => walls.push(f),
            _ => {}
        }
        acc += term * int(sign_pow(m2));
    }
    if !walls.is_empty() {
        return Err(VolumeError::NonGeneric { points: walls });
    }
    Ok(-acc / big(BigInt::from(6) * factorial(d as u32)))
}

/// `S(m) = 2^-(m-1) sum_{0 <= k < m/2} (m-2k)^(m-3) / (k! (m-k)!)`.
pub fn dp4_sum_closed(m: usize) -> Result<Rational, VolumeError> {
    if m < 4 {
        return Err(VolumeError::Argument(format!("dP4 sum needs m >= 4, got {m}")));
    }
    let mut s = Rational::zero();
    for k in 0..m.div_ceil(2) {
        let base = BigInt::from(m - 2 * k);
        s += Rational::new(
            num_traits::pow(base, m - 3),
            factorial(k as u32) * factorial((m - k) as u32),
        );
    }
    Ok(s / big(BigInt::one() << (m - 1)))
}

/// The CM intersection number exactly as printed:
/// `8(n+1)(n-1)^n + sum_{i=1}^n (-1)^(i-1) C(n+1,i) (n+1)^(n+1-i) (i-1) 2^(i+1)`.
pub fn dp4_c_paper(n: usize) -> Rational {
    let n = n as i64;
    let np1 = BigInt::from(n + 1);
    let mut c = BigInt::from(8) * &np1 * num_traits::pow(BigInt::from(n - 1), n as usize);
    for i in 1..=n {
        c += sign_pow(i - 1)
            * gen_binomial(n + 1, i)
            * num_traits::pow(np1.clone(), (n + 1 - i) as usize)
            * (i - 1)
            * (BigInt::one() << (i + 1) as u32);
    }
    big(c)
}

/// `(n+1)(n+1 - sum d)^n`: the CM linearization is this multiple of the
/// GIT one, independently of which weight is probed.
pub fn cm_scale(w: &WeightVector) -> Rational {
    let np1 = int(w.n() as i64 + 1);
    &np1 * pow(&(&np1 - w.total()), w.n() as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Closed,
    Residue,
    Both,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "closed" => Ok(Method::Closed),
            "residue" => Ok(Method::Residue),
            "both" => Ok(Method::Both),
            other => Err(format!("unknown method {other:?} (closed|residue|both)")),
        }
    }
}

/// Source of the CM intersection number `c` for the del Pezzo volume.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum CMode {
    Paper,
    #[default]
    Ring,
    Explicit(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DP4Input {
    pub m: usize,
    /// Optional; must equal `m - 2` when given.
    pub n: Option<usize>,
    pub c_mode: CMode,
    pub method: Method,
}

impl DP4Input {
    pub fn new(m: usize) -> Self {
        DP4Input {
            m,
            n: None,
            c_mode: CMode::default(),
            method: Method::default(),
        }
    }
}

/// Both candidate values of `c` side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CReconciliation {
    pub n: usize,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub c_paper: Rational,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub c_ring: Rational,
    pub agree: bool,
}

impl CReconciliation {
    pub fn for_n(n: usize) -> Self {
        let c_paper = dp4_c_paper(n);
        let c_ring = dp4_c_ring(n);
        CReconciliation {
            n,
            agree: c_paper == c_ring,
            c_paper,
            c_ring,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    Arrangement,
    Dp4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VolumeReport {
    pub subject: Subject,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub m: usize,
    #[serde(
        with = "crate::exactmath::serde_rational::vec",
        skip_serializing_if = "Vec::is_empty"
    )]
    pub weights: Vec<Rational>,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub git_volume: Rational,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub cm_scale: Rational,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub cm_volume: Rational,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chamber_census: Option<ChamberCensus>,
    pub method: Method,
    #[serde(
        with = "crate::exactmath::serde_rational::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub c: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_reconciliation: Option<CReconciliation>,
    pub wall_diagnostics: Vec<String>,
    pub warnings: Vec<String>,
    #[serde(rename = "paper_anchors")]
    pub paper_anchors: Vec<String>,
    #[serde(rename = "gitVolume_approx")]
    pub git_volume_approx: String,
    #[serde(rename = "cmVolume_approx")]
    pub cm_volume_approx: String,
}

impl VolumeReport {
    fn with_approx(mut self) -> Self {
        self.git_volume_approx = approx_decimal(&self.git_volume);
        self.cm_volume_approx = approx_decimal(&self.cm_volume);
        self
    }
}

/// Quartic del Pezzo volume `(c/m)^(m-3) S(m)`.
pub fn dp4_volume(inp: &DP4Input) -> Result<VolumeReport, VolumeError> {
    let m = inp.m;
    if m < 4 {
        return Err(VolumeError::Argument(format!("dP4 volume needs m >= 4, got {m}")));
    }
    let n = match inp.n {
        Some(n) if n + 2 != m => {
            return Err(VolumeError::Argument(format!("--n {n} is inconsistent with m = n+2 = {m}")))
        }
        Some(n) => n,
        None => m - 2,
    };
    let mut anchors = vec!["dp4-fixed-point-sum".to_string()];
    let s = match inp.method {
        Method::Closed => dp4_sum_closed(m)?,
        Method::Residue => {
            anchors.push("dp4-laurent-residue".into());
            dp4_residue_sum(m)?
        }
        Method::Both => {
            anchors.push("dp4-laurent-residue".into());
            let closed = dp4_sum_closed(m)?;
            let oracle = dp4_residue_sum(m)?;
            if closed != oracle {
                return Err(VolumeError::Inconsistent {
                    closed: format_rational(&closed),
                    oracle: format_rational(&oracle),
                });
            }
            closed
        }
    };
    let rec = CReconciliation::for_n(n);
    let mut diagnostics = Vec::new();
    if !rec.agree {
        diagnostics.push(format!(
            "c mismatch for n = {n}: printed formula gives {}, ring reduction gives {}",
            format_rational(&rec.c_paper),
            format_rational(&rec.c_ring)
        ));
    }
    let c = match &inp.c_mode {
        CMode::Paper => {
            anchors.push("cm-intersection-printed".into());
            rec.c_paper.clone()
        }
        CMode::Ring => {
            anchors.push("cm-intersection-ring".into());
            rec.c_ring.clone()
        }
        CMode::Explicit(c) => c.clone(),
    };
    let mut warnings = Vec::new();
    if m.is_multiple_of(2) {
        warnings.push(format!(
            "m = {m} is even: weakly balanced case, strictly semistable points exist; the odd-m formula is applied unchanged"
        ));
    }
    let scale = &c / int(m as i64);
    let cm_volume = pow(&scale, (m - 3) as u32) * &s;
    Ok(VolumeReport {
        subject: Subject::Dp4,
        n: Some(n),
        m,
        weights: Vec::new(),
        git_volume: s,
        cm_scale: scale,
        cm_volume,
        dimension: m - 3,
        chamber_census: None,
        method: inp.method,
        c: Some(c),
        c_reconciliation: Some(rec),
        wall_diagnostics: diagnostics,
        warnings,
        paper_anchors: anchors,
        git_volume_approx: String::new(),
        cm_volume_approx: String::new(),
    }
    .with_approx())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrangementOptions {
    pub method: Method,
    pub threads: usize,
}

impl Default for ArrangementOptions {
    fn default() -> Self {
        ArrangementOptions {
            method: Method::Closed,
            threads: 1,
        }
    }
}

/// Dimension of the quotient: `m-3` for points on a line, `2m-8` for lines
/// in the plane.
pub fn arrangement_dimension(n: usize, m: usize) -> usize {
    (n * m).saturating_sub((n + 1) * (n + 1) - 1)
}

/// Closed form and/or residue oracle for `n` in `{1, 2}`.
pub fn vol_arrangement(w: &WeightVector, opts: &ArrangementOptions) -> Result<VolumeReport, VolumeError> {
    let n = w.n();
    if n != 1 && n != 2 {
        return Err(VolumeError::WrongRank { expected: 2, got: n });
    }
    let threads = opts.threads.max(1);
    let closed = |w| if n == 1 { vol1_closed_with(w, threads) } else { vol2_closed_with(w, threads) };
    let oracle = |w| {
        if n == 1 {
            jk_volume_rank1_with(w, threads)
        } else {
            jk_volume_rank2_with(w, threads)
        }
    };
    let mut anchors = vec![if n == 1 { "rank1-chamber-sum" } else { "rank2-chamber-sum" }.to_string()];
    let outcome = closed(w)?;
    let git = match opts.method {
        Method::Closed => outcome.volume.clone(),
        Method::Residue | Method::Both => {
            anchors.push(if n == 1 { "rank1-jk-residue" } else { "rank2-iterated-jk-residue" }.into());
            let r = oracle(w)?;
            if opts.method == Method::Both && r != outcome.volume {
                return Err(VolumeError::Inconsistent {
                    closed: format_rational(&outcome.volume),
                    oracle: format_rational(&r),
                });
            }
            r
        }
    };
    anchors.push("cm-linearization-scale".into());
    let dimension = arrangement_dimension(n, w.m());
    let scale = cm_scale(w);
    let cm_volume = pow(&scale, dimension as u32) * &git;
    let mut warnings = Vec::new();
    if git.is_negative() {
        // With the (-1)^m1 fixed-point sign the n = 1 sum is (-1)^m times
        // the degree, so odd m comes out negative.
        warnings.push(format!(
            "negative volume: the (-1)^m1 sign convention yields (-1)^m times the degree for n = 1; the degree is {}",
            format_rational(&-&git)
        ));
    }
    Ok(VolumeReport {
        subject: Subject::Arrangement,
        n: Some(n),
        m: w.m(),
        weights: w.weights().to_vec(),
        git_volume: git,
        cm_scale: scale,
        cm_volume,
        dimension,
        chamber_census: Some(outcome.census),
        method: opts.method,
        c: None,
        c_reconciliation: None,
        wall_diagnostics: Vec::new(),
        warnings,
        paper_anchors: anchors,
        git_volume_approx: String::new(),
        cm_volume_approx: String::new(),
    }
    .with_approx())
}
