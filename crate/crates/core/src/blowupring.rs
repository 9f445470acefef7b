//! Intersection ring of the blow-up `X = Bl_B Q_0`, where `Q_0` is a quadric
//! in `P^(n+2)` and `B = Q_0 . Q_1 . Q_2` is the base locus of the pencil.
//!
//! Classes: `H` (hyperplane pullback), and on the exceptional divisor `E`,
//! `h` (the hyperplane class of `B` pulled back) and `x = c_1(O(E)|_E)`.
//! The normal bundle of `B` is `O_B(2)^2`, which gives the single relation
//! `x^2 = -4hx - 4h^2`, i.e. `(x + 2h)^2 = 0`.
//!
//! Integration on `E` (a `P^1`-bundle over `B`, `dim B = n-1`):
//! `int_E h^(n-1) x = -deg B = -8` (three quadrics) and `int_E h^n = 0`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactmath::{big, gen_binomial, int, sign_pow, Rational};

/// Degree of the base locus: three quadrics in `P^(n+2)`.
pub const BASE_DEGREE: i64 = 8;

/// Exponents of `H^a h^b x^e`.
pub type Monomial = (u32, u32, u32);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RingElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Rational::one(), (0, 0, 0))
    }

    pub fn term(c: Rational, mono: Monomial) -> Self {
        let mut r = Self::zero();
        r.add_term(mono, c);
        r
    }

    pub fn big_h() -> Self {
        Self::term(Rational::one(), (1, 0, 0))
    }

    pub fn h() -> Self {
        Self::term(Rational::one(), (0, 1, 0))
    }

    pub fn x() -> Self {
        Self::term(Rational::one(), (0, 0, 1))
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn coeff(&self, mono: Monomial) -> Rational {
        self.terms.get(&mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_reduced(&self) -> bool {
        self.terms.keys().all(|&(_, _, e)| e <= 1)
    }

    /// Rewrites every `x^e`, `e >= 2`, with `x^2 -> -4hx - 4h^2` until the
    /// `x`-degree is at most one.
    pub fn reduce(&self) -> Self {
        let mut work = self.clone();
        loop {
            let Some((&mono, c)) = work.terms.iter().find(|(&(_, _, e), _)| e >= 2) else {
                return work;
            };
            let c = c.clone();
            let (a, b, e) = mono;
            work.terms.remove(&mono);
            work.add_term((a, b + 1, e - 1), &c * int(-4));
            work.add_term((a, b + 2, e - 2), &c * int(-4));
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| (&acc * self).reduce())
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (&(a1, b1, e1), c1) in &self.terms {
            for (&(a2, b2, e2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2, e1 + e2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(&m, c)| (m, -c.clone())).collect(),
        }
    }
}

/// `(A_k, B_k)` with `x^k = A_k h^(k-1) x + B_k h^k`, by the inductive step
/// `x^(k+1) = x * x^k` followed by one reduction.
pub fn xpow_reduce(k: u32) -> (Rational, Rational) {
    assert!(k >= 1, "x^k reduction needs k >= 1");
    let x = RingElement::x();
    let mut cur = x.clone();
    for _ in 1..k {
        cur = (&cur * &x).reduce();
    }
    (cur.coeff((0, k - 1, 1)), cur.coeff((0, k, 0)))
}

/// Same coefficients, by reducing the single monomial `x^k` in one pass.
pub fn xpow_direct(k: u32) -> (Rational, Rational) {
    assert!(k >= 1, "x^k reduction needs k >= 1");
    let r = RingElement::term(Rational::one(), (0, 0, k)).reduce();
    (r.coeff((0, k - 1, 1)), r.coeff((0, k, 0)))
}

/// Same coefficients, by the substitution `x = u - 2h` with `u^2 = 0`:
/// `x^k = (-2h)^k + k (-2h)^(k-1) u`, then `u = x + 2h`.
pub fn xpow_by_substitution(k: u32) -> (Rational, Rational) {
    assert!(k >= 1, "x^k reduction needs k >= 1");
    let minus_two = int(-2);
    let p = |e: u32| crate::exactmath::pow(&minus_two, e);
    let ku = int(k as i64) * p(k - 1);
    let a = ku.clone();
    let b = p(k) + ku * int(2);
    (a, b)
}

/// `A_k = (-1)^(k-1) k 2^(k-1)` and `B_k = (-1)^(k-1) (k-1) 2^k`.
pub fn xpow_closed(k: u32) -> (Rational, Rational) {
    let k = k as i64;
    let s = sign_pow(k - 1);
    (
        int(s * k) * big(BigInt::one() << (k - 1) as u32),
        int(s * (k - 1)) * big(BigInt::one() << k as u32),
    )
}

/// `int_E` of a reduced class of total `(h, x)`-degree `n` (no `H`).
pub fn integrate_on_exceptional(elem: &RingElement, n: u32) -> Rational {
    let r = elem.reduce();
    let mut acc = Rational::zero();
    for (&(a, b, e), c) in r.terms() {
        if a == 0 && e == 1 && b + 1 == n {
            acc += c * int(-BASE_DEGREE);
        }
    }
    acc
}

/// Three candidate values of `H^(n+1-i) E^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixedPower {
    pub i: u32,
    /// `int_E h^(n+1-i) x^(i-1)` through the ring reduction.
    #[serde(with = "crate::exactmath::serde_rational")]
    pub reduction: Rational,
    /// `(-1)^(i-1) (i-1) 2^(i+1)`.
    #[serde(with = "crate::exactmath::serde_rational")]
    pub printed: Rational,
    /// `(i-1) 2^(i+1)`: the value the printed expansion of `c` uses.
    #[serde(with = "crate::exactmath::serde_rational")]
    pub implied: Rational,
}

/// `H^(n+1-i) E^i` for `2 <= i <= n+1`.
pub fn mixed_power(n: u32, i: u32) -> Option<MixedPower> {
    if i < 2 || i > n + 1 {
        return None;
    }
    let h = RingElement::h();
    let integrand = &h.pow(n + 1 - i) * &RingElement::x().pow(i - 1);
    let reduction = integrate_on_exceptional(&integrand, n);
    let magnitude = int((i as i64 - 1) * (1i64 << (i + 1)));
    Some(MixedPower {
        i,
        reduction,
        printed: &magnitude * int(sign_pow(i as i64 - 1)),
        implied: magnitude,
    })
}

/// `H^(n+1-i) E^i` for all `0 <= i <= n+1`, with `H^(n+1) = 1`, `H^n E = 0`.
fn mixed_powers_reduced(n: u32) -> Vec<Rational> {
    (0..=n + 1)
        .map(|i| match i {
            0 => Rational::one(),
            1 => Rational::zero(),
            _ => mixed_power(n, i).expect("in range").reduction,
        })
        .collect()
}

/// `((n+1)H - E)^(n+1)` expanded binomially over the reduced mixed powers.
pub fn top_self_intersection(n: u32) -> Rational {
    let np1 = n as i64 + 1;
    mixed_powers_reduced(n)
        .into_iter()
        .enumerate()
        .map(|(i, mi)| {
            let i = i as i64;
            big(gen_binomial(np1, i) * num_traits::pow(BigInt::from(np1), (np1 - i) as usize) * sign_pow(i))
                * mi
        })
        .sum()
}

/// `c = 8(n+1)(n-1)^n - ((n+1)H - E)^(n+1)` from the ring.
pub fn dp4_c_ring(n: usize) -> Rational {
    let base = int(8 * (n as i64 + 1)) * big(num_traits::pow(BigInt::from(n as i64 - 1), n));
    base - top_self_intersection(n as u32)
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct XPowStep {
    pub k: u32,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub a: Rational,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub b: Rational,
}

/// Full audit trail of the `c` computation for one `n`.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RingTrace {
    pub n: u32,
    pub relation: &'static str,
    pub base_degree: i64,
    pub xpow: Vec<XPowStep>,
    pub mixed_powers: Vec<MixedPower>,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub top_self_intersection: Rational,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub c_ring: Rational,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub c_paper: Rational,
}

pub fn ring_trace(n: u32) -> RingTrace {
    RingTrace {
        n,
        relation: "x^2 = -4hx - 4h^2",
        base_degree: BASE_DEGREE,
        xpow: (1..=n.max(1))
            .map(|k| {
                let (a, b) = xpow_reduce(k);
                XPowStep { k, a, b }
            })
            .collect(),
        mixed_powers: (2..=n + 1).filter_map(|i| mixed_power(n, i)).collect(),
        top_self_intersection: top_self_intersection(n),
        c_ring: dp4_c_ring(n as usize),
        c_paper: crate::closedform::dp4_c_paper(n as usize),
    }
}
