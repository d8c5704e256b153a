//! Counting polynomials `F_g(x) = Σ_{i=1..g} N^{(i)}_{g,i} · C(x, i)`, with
//! `F_g(d) = N_{g,d}` for every dimension `d`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("expected {expected} rank counts, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("the top rank count must be positive")]
    ZeroLeading,
    #[error("binomial and monomial evaluation disagree at {0}")]
    InternalInconsistency(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusPolynomial {
    genus: usize,
    binomial_coeffs: Vec<BigInt>,
    /// `c_g, …, c_1`; the constant term is always zero.
    monomial_coeffs: Vec<BigRational>,
}

/// Coefficients of `x(x−1)…(x−i+1)`, constant term first.
fn falling_factorial(i: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for k in 0..i {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(k);
        }
        poly = next;
    }
    poly
}

fn binomial(n: u64, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k as u64 {
        if j >= n {
            return BigInt::zero();
        }
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Builds `F_g` from `N^{(1)}_{g,1}, …, N^{(g)}_{g,g}`.
pub fn build_genus_polynomial(
    genus: usize,
    rank_counts: &[u64],
) -> Result<GenusPolynomial, PolyError> {
    if rank_counts.len() != genus {
        return Err(PolyError::WrongLength {
            expected: genus,
            found: rank_counts.len(),
        });
    }
    if genus > 0 && rank_counts[genus - 1] == 0 {
        return Err(PolyError::ZeroLeading);
    }
    let binomial_coeffs: Vec<BigInt> = rank_counts.iter().map(|&n| BigInt::from(n)).collect();

    let mut ascending = vec![BigRational::zero(); genus + 1];
    let mut factorial = BigInt::one();
    for (idx, n) in binomial_coeffs.iter().enumerate() {
        let i = idx + 1;
        factorial *= BigInt::from(i);
        for (j, c) in falling_factorial(i).into_iter().enumerate() {
            ascending[j] += BigRational::new(c * n, factorial.clone());
        }
    }
    debug_assert!(ascending[0].is_zero());
    let monomial_coeffs = ascending.into_iter().skip(1).rev().collect();
    Ok(GenusPolynomial {
        genus,
        binomial_coeffs,
        monomial_coeffs,
    })
}

impl GenusPolynomial {
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `N^{(i)}_{g,i}` for `i = 1..=g`.
    pub fn binomial_coeffs(&self) -> &[BigInt] {
        &self.binomial_coeffs
    }

    /// `c_g, …, c_1` with `F_g(x) = Σ c_j x^j`.
    pub fn monomial_coeffs(&self) -> &[BigRational] {
        &self.monomial_coeffs
    }

    /// Coefficient of `x^j`.
    pub fn coefficient(&self, j: usize) -> BigRational {
        if j == 0 || j > self.genus {
            BigRational::zero()
        } else {
            self.monomial_coeffs[self.genus - j].clone()
        }
    }

    /// `F_g(d)`, computed in the binomial basis and checked against the
    /// monomial basis.
    pub fn evaluate(&self, d: u64) -> Result<BigInt, PolyError> {
        let by_binomial: BigInt = self
            .binomial_coeffs
            .iter()
            .enumerate()
            .map(|(idx, n)| n * binomial(d, idx + 1))
            .sum();
        let x = BigRational::from_integer(BigInt::from(d));
        let by_monomial = self
            .monomial_coeffs
            .iter()
            .fold(BigRational::zero(), |acc, c| (acc + c) * &x);
        if !by_monomial.is_integer() || by_monomial.to_integer() != by_binomial {
            return Err(PolyError::InternalInconsistency(d));
        }
        Ok(by_binomial)
    }
}

impl fmt::Display for GenusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, c) in self.monomial_coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = self.genus - idx;
            let sep = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            let abs = c.abs();
            let coeff = if abs.is_one() {
                String::new()
            } else {
                format!("{abs}*")
            };
            let var = if power == 1 {
                "x".to_string()
            } else {
                format!("x^{power}")
            };
            write!(f, "{sep}{coeff}{var}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Decimal rendering of `q` rounded half-to-even at `places` digits, with
/// trailing zeros dropped (`1/2 → "0.5"`, `529/638 → "0.829153605"`).
pub fn render_decimal(q: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = q.abs() * BigRational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = scaled - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rounded = if frac > half || (frac == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded_is_zero(&int_part, &frac_part) {
        "-"
    } else {
        ""
    };
    let digits = format!("{:0>width$}", frac_part.to_string(), width = places);
    let digits = digits.trim_end_matches('0');
    if digits.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{digits}")
    }
}

fn rounded_is_zero(a: &BigInt, b: &BigInt) -> bool {
    a.is_zero() && b.is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub genus: usize,
    pub n1: u64,
    pub n1_squared: BigInt,
    pub n2: u64,
    /// `(N_{g,1})² / N_{g,2}`.
    pub ratio: BigRational,
    /// `N_{g,2} / N_{g−1,2}`, with `N_{0,2} = 1`.
    pub growth: BigRational,
}

impl RatioRow {
    pub fn ratio_decimal(&self) -> String {
        render_decimal(&self.ratio, 10)
    }

    pub fn growth_decimal(&self) -> String {
        render_decimal(&self.growth, 10)
    }
}

/// Rows for `g = 1..=max_genus`; `counts_1d[i]` and `counts_2d[i]` hold the
/// counts for genus `i + 1`. Rows stop early if either sequence runs out.
pub fn ratio_table(max_genus: usize, counts_1d: &[u64], counts_2d: &[u64]) -> Vec<RatioRow> {
    let mut rows = Vec::new();
    let mut prev = 1u64;
    for g in 1..=max_genus {
        let (Some(&n1), Some(&n2)) = (counts_1d.get(g - 1), counts_2d.get(g - 1)) else {
            break;
        };
        let n1_squared = BigInt::from(n1) * BigInt::from(n1);
        let ratio = if n2 == 0 {
            BigRational::zero()
        } else {
            BigRational::new(n1_squared.clone(), BigInt::from(n2))
        };
        let growth = if prev == 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::from(n2), BigInt::from(prev))
        };
        rows.push(RatioRow {
            genus: g,
            n1,
            n1_squared,
            n2,
            ratio,
            growth,
        });
        prev = n2;
    }
    rows
}

/// Lossy `f64` view, for display only.
pub fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
