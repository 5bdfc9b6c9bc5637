//! Exact rational helpers: binomials, the two Bernoulli families and
//! Faulhaber power-sum polynomials.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// Sign convention for Bernoulli numbers.
///
/// `Plus` is generated by `t/(1 - e^{-t})` (so `B_1 = 1/2`), `Minus` by
/// `t/(e^t - 1)` (so `B_1 = -1/2`). All other values coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BernoulliSign {
    Plus,
    Minus,
}

/// Upper bound convention for a power sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumBound {
    /// `sum_{n=1}^{m} n^k`
    Inclusive,
    /// `sum_{n=1}^{m-1} n^k`
    Exclusive,
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Binomial coefficient `C(n, k)` for `n >= 0`.
///
/// Zero outside `0 <= k <= n`. The case `k = -1` is `delta_{n,-1}`, which is
/// zero for every admissible `n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn minus_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// `B^-_n`, memoized. Uses `sum_{i=0}^{n} C(n+1, i) B^-_i = 0` for `n >= 1`.
fn bernoulli_minus(n: usize) -> Rational {
    {
        let table = minus_table().read().expect("bernoulli table poisoned");
        if let Some(b) = table.get(n) {
            return b.clone();
        }
    }
    let mut table = minus_table().write().expect("bernoulli table poisoned");
    while table.len() <= n {
        let m = table.len();
        let mut acc = Rational::zero();
        for (i, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from_integer(binomial(m as u64 + 1, i as i64)) * b;
            }
        }
        table.push(-acc / int(m as i64 + 1));
    }
    table[n].clone()
}

pub fn bernoulli(n: usize, sign: BernoulliSign) -> Rational {
    let b = bernoulli_minus(n);
    match sign {
        BernoulliSign::Plus if n == 1 => -b,
        _ => b,
    }
}

/// Polynomial in `m` equal to a power sum `sum n^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faulhaber {
    /// `(power, coefficient)` pairs with non-zero coefficients, highest power first.
    pub terms: Vec<(u32, Rational)>,
    /// Constant correction: `-1` for the exclusive sum with `k = 0`, else zero.
    pub correction: Rational,
}

impl Faulhaber {
    pub fn eval(&self, m: &BigInt) -> Rational {
        let m = Rational::from_integer(m.clone());
        let mut acc = self.correction.clone();
        for (p, c) in &self.terms {
            acc += c * num_traits::pow(m.clone(), *p as usize);
        }
        acc
    }
}

pub fn faulhaber_coefficients(k: u32, bound: SumBound) -> Faulhaber {
    let sign = match bound {
        SumBound::Inclusive => BernoulliSign::Plus,
        SumBound::Exclusive => BernoulliSign::Minus,
    };
    let scale = int(k as i64 + 1).recip();
    let terms = (0..=k)
        .filter_map(|i| {
            let c = Rational::from_integer(binomial(k as u64 + 1, i as i64))
                * bernoulli(i as usize, sign)
                * &scale;
            (!c.is_zero()).then(|| (k + 1 - i, c))
        })
        .collect();
    let correction = if bound == SumBound::Exclusive && k == 0 {
        -Rational::one()
    } else {
        Rational::zero()
    };
    Faulhaber { terms, correction }
}

/// `n^{-k}` as an exact rational, for `n >= 1` and any integer `k`.
pub fn inverse_power(n: u64, k: i64) -> Rational {
    let base = BigInt::from(n);
    let p = num_traits::pow(base, k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::new(BigInt::one(), p)
    } else {
        Rational::from_integer(p)
    }
}

#[cfg(test)]
pub(crate) fn is_in_lowest_terms(r: &Rational) -> bool {
    use num_integer::Integer;
    use num_traits::Signed;
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}
