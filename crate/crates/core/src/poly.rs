//! Sparse multivariate Laurent polynomials with exact integer coefficients,
//! dense univariate polynomials, and numerator/denominator pairs with
//! truncated series expansion.
//!
//! Variables: one series variable `z`, one auxiliary variable `t` (for
//! characteristic polynomials), and a fixed block of `y`-variables indexed by
//! the ambient lattice coordinates. `y`-exponents may be negative; `z` and
//! `t` exponents may not. Truncation is always by `z`-degree only; the
//! `y`-support at each `z`-degree stays finite on its own.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::lattice::LatticePoint;
use crate::{Error, Result};

/// Exponent tuple of one term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Exponent {
    pub z: u32,
    pub t: u32,
    pub y: Vec<i64>,
}

impl Exponent {
    pub fn constant(num_y: usize) -> Self {
        Exponent {
            z: 0,
            t: 0,
            y: vec![0; num_y],
        }
    }
}

/// A sparse multivariate Laurent polynomial. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    num_y: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl MultiPoly {
    pub fn zero(num_y: usize) -> Self {
        MultiPoly {
            num_y,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_y: usize) -> Self {
        Self::constant(num_y, BigInt::one())
    }

    pub fn constant(num_y: usize, c: BigInt) -> Self {
        let mut p = Self::zero(num_y);
        if !c.is_zero() {
            p.terms.insert(Exponent::constant(num_y), c);
        }
        p
    }

    pub fn term(num_y: usize, exp: Exponent, c: BigInt) -> Self {
        assert_eq!(exp.y.len(), num_y);
        let mut p = Self::zero(num_y);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The monomial `z`.
    pub fn z(num_y: usize) -> Self {
        let mut e = Exponent::constant(num_y);
        e.z = 1;
        Self::term(num_y, e, BigInt::one())
    }

    /// The monomial `t`.
    pub fn t(num_y: usize) -> Self {
        let mut e = Exponent::constant(num_y);
        e.t = 1;
        Self::term(num_y, e, BigInt::one())
    }

    /// The Laurent monomial `y^alpha` for a lattice point `alpha`.
    pub fn y_monomial(num_y: usize, alpha: &LatticePoint) -> Self {
        assert_eq!(alpha.dim(), num_y);
        let mut e = Exponent::constant(num_y);
        for (slot, c) in e.y.iter_mut().zip(alpha.coords()) {
            *slot = c.to_i64().expect("y-exponent exceeds i64");
        }
        Self::term(num_y, e, BigInt::one())
    }

    pub fn num_y(&self) -> usize {
        self.num_y
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Exponent::constant(self.num_y))
                .is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponent) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exp.y.len(), self.num_y);
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_y, other.num_y);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.num_y, other.num_y);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = Self::zero(self.num_y);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.mul_truncated(other, u32::MAX)
    }

    /// Product with all terms of `z`-degree above `z_max` dropped.
    pub fn mul_truncated(&self, other: &MultiPoly, z_max: u32) -> MultiPoly {
        assert_eq!(self.num_y, other.num_y);
        let mut out = Self::zero(self.num_y);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let z = ea.z + eb.z;
                if z > z_max {
                    continue;
                }
                let exp = Exponent {
                    z,
                    t: ea.t + eb.t,
                    y: ea.y.iter().zip(&eb.y).map(|(a, b)| a + b).collect(),
                };
                out.insert(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        let mut out = Self::zero(self.num_y);
        if k.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * k);
        }
        out
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = Self::one(self.num_y);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Divides every coefficient by `k`, which must divide exactly.
    pub fn div_exact_scalar(&self, k: &BigInt) -> Result<MultiPoly> {
        if k.is_zero() {
            return Err(Error::InvalidParameter("division by zero".into()));
        }
        let mut out = Self::zero(self.num_y);
        for (e, c) in &self.terms {
            let (q, r) = num_integer::Integer::div_rem(c, k);
            if !r.is_zero() {
                return Err(Error::Contract(format!(
                    "inexact scalar division of {c} by {k}"
                )));
            }
            out.terms.insert(e.clone(), q);
        }
        Ok(out)
    }

    pub fn truncate_z(&self, z_max: u32) -> MultiPoly {
        let mut out = Self::zero(self.num_y);
        for (e, c) in &self.terms {
            if e.z <= z_max {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn max_z_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.z).max().unwrap_or(0)
    }

    pub fn max_t_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.t).max().unwrap_or(0)
    }

    /// Substitutes `t = 1`.
    pub fn subst_t_one(&self) -> MultiPoly {
        let mut out = Self::zero(self.num_y);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp.t = 0;
            out.insert(exp, c.clone());
        }
        out
    }

    /// Substitutes every `y`-variable by 1, keeping `z` and `t`.
    pub fn subst_y_one(&self) -> MultiPoly {
        let mut out = Self::zero(0);
        for (e, c) in &self.terms {
            out.insert(
                Exponent {
                    z: e.z,
                    t: e.t,
                    y: Vec::new(),
                },
                c.clone(),
            );
        }
        out
    }

    /// The coefficient of `z^k` as a polynomial in the remaining variables
    /// (`z`-exponent cleared).
    pub fn z_slice(&self, k: u32) -> MultiPoly {
        let mut out = Self::zero(self.num_y);
        for (e, c) in &self.terms {
            if e.z == k {
                let mut exp = e.clone();
                exp.z = 0;
                out.terms.insert(exp, c.clone());
            }
        }
        out
    }

    /// Re-attaches `z^k` to every term.
    pub fn mul_z_power(&self, k: u32) -> MultiPoly {
        let mut out = Self::zero(self.num_y);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp.z += k;
            out.terms.insert(exp, c.clone());
        }
        out
    }

    /// Attaches `t^k` to every term.
    pub fn mul_t_power(&self, k: u32) -> MultiPoly {
        let mut out = Self::zero(self.num_y);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp.t += k;
            out.terms.insert(exp, c.clone());
        }
        out
    }

    /// Converts a polynomial in `z` alone into dense univariate form.
    pub fn to_unipoly_in_z(&self) -> Result<UniPoly> {
        let mut coeffs = vec![BigInt::zero(); self.max_z_degree() as usize + 1];
        for (e, c) in &self.terms {
            if e.t != 0 || e.y.iter().any(|&v| v != 0) {
                return Err(Error::Contract(
                    "polynomial is not univariate in z".into(),
                ));
            }
            coeffs[e.z as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "z": e.z,
                    "t": e.t,
                    "y": e.y,
                    "coeff": crate::lattice::bigint_json(c),
                })
            })
            .collect();
        serde_json::json!({ "num_y": self.num_y, "terms": terms })
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mut piece = String::new();
            let abs = c.abs();
            let mut vars = Vec::new();
            if e.z == 1 {
                vars.push("z".to_string());
            } else if e.z > 1 {
                vars.push(format!("z^{}", e.z));
            }
            if e.t == 1 {
                vars.push("t".to_string());
            } else if e.t > 1 {
                vars.push(format!("t^{}", e.t));
            }
            if e.y.iter().any(|&v| v != 0) {
                let ys: Vec<String> = e.y.iter().map(|v| v.to_string()).collect();
                vars.push(format!("y^[{}]", ys.join(",")));
            }
            if vars.is_empty() || !abs.is_one() {
                piece.push_str(&abs.to_string());
                if !vars.is_empty() {
                    piece.push('*');
                }
            }
            piece.push_str(&vars.join("*"));
            if first {
                if c.is_negative() {
                    write!(f, "-{piece}")?;
                } else {
                    write!(f, "{piece}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {piece}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}

/// Dense univariate integer polynomial; index is the exponent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![BigInt::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut out = UniPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Substitutes the variable by its negative: flips signs of odd terms.
    pub fn subst_neg(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, other: &UniPoly) -> Option<UniPoly> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let mut rem: Vec<num_rational::BigRational> = self
            .coeffs
            .iter()
            .map(|c| num_rational::BigRational::from(c.clone()))
            .collect();
        let dd = other.coeffs.len() - 1;
        if rem.len() - 1 < dd {
            return None;
        }
        let lead = num_rational::BigRational::from(other.coeffs[dd].clone());
        let mut quot = vec![num_rational::BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let factor = &rem[k + dd] / &lead;
            quot[k] = factor.clone();
            for (j, c) in other.coeffs.iter().enumerate() {
                let delta = &factor * num_rational::BigRational::from(c.clone());
                rem[k + j] -= delta;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = Vec::with_capacity(quot.len());
        for q in quot {
            if !q.is_integer() {
                return None;
            }
            out.push(q.to_integer());
        }
        Some(UniPoly::new(out))
    }

    /// Primitive part with positive leading coefficient.
    fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut content = BigInt::zero();
        for c in &self.coeffs {
            content = num_integer::gcd(content, c.clone());
        }
        if self.coeffs.last().unwrap().is_negative() {
            content = -content;
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c / &content).collect(),
        }
    }

    /// Greatest common divisor, normalized primitive with positive leading
    /// coefficient.
    pub fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut f = a.primitive();
        let mut g = b.primitive();
        while !g.is_zero() {
            // Rational-coefficient remainder, then renormalize.
            let mut rem: Vec<num_rational::BigRational> = f
                .coeffs
                .iter()
                .map(|c| num_rational::BigRational::from(c.clone()))
                .collect();
            let dd = g.coeffs.len() - 1;
            let lead = num_rational::BigRational::from(g.coeffs[dd].clone());
            while rem.len() > dd && rem.iter().any(|c| !c.is_zero()) {
                while rem.last().is_some_and(|c| c.is_zero()) {
                    rem.pop();
                }
                if rem.len() <= dd {
                    break;
                }
                let k = rem.len() - 1 - dd;
                let factor = rem.last().unwrap() / &lead;
                for (j, c) in g.coeffs.iter().enumerate() {
                    let delta = &factor * num_rational::BigRational::from(c.clone());
                    rem[k + j] -= delta;
                }
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            // Clear denominators back to an integer polynomial.
            let mut lcm = BigInt::one();
            for c in &rem {
                lcm = num_integer::lcm(lcm, c.denom().clone());
            }
            let next = UniPoly::new(rem.iter().map(|c| c.numer() * (&lcm / c.denom())).collect());
            f = g;
            g = next.primitive();
        }
        f.primitive()
    }

    /// As a polynomial in `z` inside the multivariate representation.
    pub fn to_multipoly_in_z(&self, num_y: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(num_y);
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut e = Exponent::constant(num_y);
            e.z = k as u32;
            out.insert(e, c.clone());
        }
        out
    }

    /// As a polynomial in `t` inside the multivariate representation.
    pub fn to_multipoly_in_t(&self, num_y: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(num_y);
        for (k, c) in self.coeffs.iter().enumerate() {
            let mut e = Exponent::constant(num_y);
            e.t = k as u32;
            out.insert(e, c.clone());
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let body = if var.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                var
            } else {
                format!("{abs}*{var}")
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// A rational function presented as numerator over denominator, expandable as
/// a power series in `z` because the `z`-free part of the denominator is the
/// constant 1 or -1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalSeries {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl RationalSeries {
    pub fn new(numerator: MultiPoly, denominator: MultiPoly) -> Result<Self> {
        assert_eq!(numerator.num_y(), denominator.num_y());
        let d0 = denominator.z_slice(0);
        let ok = d0.num_terms() == 1
            && d0
                .terms()
                .next()
                .is_some_and(|(e, c)| *e == Exponent::constant(denominator.num_y()) && c.abs().is_one());
        if !ok {
            return Err(Error::InvalidParameter(
                "denominator must have constant term +1 or -1 in its z-free part".into(),
            ));
        }
        Ok(RationalSeries {
            numerator,
            denominator,
        })
    }

    /// The unique truncated series `S` with
    /// `S * denominator = numerator (mod z^{order+1})`.
    pub fn expand(&self, order: u32) -> MultiPoly {
        let num_y = self.numerator.num_y();
        let d0 = self
            .denominator
            .z_slice(0)
            .terms()
            .next()
            .map(|(_, c)| c.clone())
            .expect("validated at construction");
        let den_slices: Vec<MultiPoly> =
            (0..=self.denominator.max_z_degree()).map(|k| self.denominator.z_slice(k)).collect();
        let mut out = MultiPoly::zero(num_y);
        let mut slices: Vec<MultiPoly> = Vec::new();
        for k in 0..=order {
            let mut acc = self.numerator.z_slice(k);
            for j in 1..=k.min(self.denominator.max_z_degree()) {
                let prior = &slices[(k - j) as usize];
                acc = acc.sub(&den_slices[j as usize].mul(prior));
            }
            // d0 is +1 or -1, so this division is exact.
            let slice = acc.div_exact_scalar(&d0).expect("unit constant term");
            out = out.add(&slice.mul_z_power(k));
            slices.push(slice);
        }
        out
    }

    /// Substitutes every `y`-variable by 1 in both parts.
    pub fn specialize_y_one(&self) -> RationalSeries {
        RationalSeries {
            numerator: self.numerator.subst_y_one(),
            denominator: self.denominator.subst_y_one(),
        }
    }

    /// Reduces a univariate-in-`z` pair to lowest terms, normalizing the
    /// denominator constant term to +1.
    pub fn reduce_univariate(&self) -> Result<RationalSeries> {
        let num = self.numerator.to_unipoly_in_z()?;
        let den = self.denominator.to_unipoly_in_z()?;
        let g = UniPoly::gcd(&num, &den);
        let mut num_red = num.div_exact(&g).ok_or_else(|| {
            Error::Contract("gcd does not divide the numerator".into())
        })?;
        let mut den_red = den.div_exact(&g).ok_or_else(|| {
            Error::Contract("gcd does not divide the denominator".into())
        })?;
        if den_red.coeff(0) == BigInt::from(-1) {
            num_red = num_red.neg();
            den_red = den_red.neg();
        }
        if !den_red.coeff(0).is_one() {
            return Err(Error::Contract(
                "reduced denominator constant term is not a unit".into(),
            ));
        }
        RationalSeries::new(num_red.to_multipoly_in_z(0), den_red.to_multipoly_in_z(0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "numerator": self.numerator.to_json(),
            "denominator": self.denominator.to_json(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zpoly(coeffs: &[i64]) -> MultiPoly {
        UniPoly::from_i64(coeffs).to_multipoly_in_z(0)
    }

    #[test]
    fn geometric_series() {
        let r = RationalSeries::new(zpoly(&[1]), zpoly(&[1, -1])).unwrap();
        assert_eq!(r.expand(3), zpoly(&[1, 1, 1, 1]));
    }

    #[test]
    fn series_for_quadratic_denominator_matches_recurrence() {
        // Independent oracle: b_0 = 1, b_1 = 4, b_n = 4 b_{n-1} - b_{n-2}.
        let mut oracle = vec![BigInt::from(1), BigInt::from(4)];
        for n in 2..=6 {
            let next = BigInt::from(4) * &oracle[n - 1] - &oracle[n - 2];
            oracle.push(next);
        }
        assert_eq!(oracle[2], BigInt::from(15));
        assert_eq!(oracle[4], BigInt::from(209));

        let r = RationalSeries::new(zpoly(&[1]), zpoly(&[1, -4, 1])).unwrap();
        let s = r.expand(6).to_unipoly_in_z().unwrap();
        assert_eq!(s.coeffs(), &oracle[..]);
    }

    #[test]
    fn expansion_times_denominator_recovers_numerator() {
        let num = zpoly(&[1, 1]);
        let den = zpoly(&[1, -3, -3, 1]);
        let r = RationalSeries::new(num.clone(), den.clone()).unwrap();
        for order in [0u32, 3, 8] {
            let s = r.expand(order);
            let back = s.mul(&den).truncate_z(order);
            assert_eq!(back, num.truncate_z(order));
        }
    }

    #[test]
    fn denominator_without_unit_constant_is_rejected() {
        assert!(RationalSeries::new(zpoly(&[1]), zpoly(&[2, 1])).is_err());
        assert!(RationalSeries::new(zpoly(&[1]), zpoly(&[0, 1])).is_err());
    }

    #[test]
    fn laurent_exponents_multiply_additively() {
        let mut e1 = Exponent::constant(2);
        e1.y = vec![1, -2];
        let mut e2 = Exponent::constant(2);
        e2.y = vec![-1, 5];
        let a = MultiPoly::term(2, e1, BigInt::from(3));
        let b = MultiPoly::term(2, e2, BigInt::from(2));
        let p = a.mul(&b);
        let (e, c) = p.terms().next().unwrap();
        assert_eq!(e.y, vec![0, 3]);
        assert_eq!(*c, BigInt::from(6));
    }

    #[test]
    fn unipoly_gcd_pulls_out_common_factor() {
        let one_plus = UniPoly::from_i64(&[1, 1]);
        let a = one_plus.pow(3).mul(&UniPoly::from_i64(&[1, -4, 1]));
        let b = one_plus.mul(&UniPoly::from_i64(&[1, 1, 1]));
        let g = UniPoly::gcd(&a, &b);
        assert_eq!(g, one_plus);
    }

    #[test]
    fn reduce_univariate_cancels() {
        // (1+z) / ((1+z)(1-4z+z^2)) reduces to 1 / (1-4z+z^2).
        let num = zpoly(&[1, 1]);
        let den = zpoly(&[1, 1]).mul(&zpoly(&[1, -4, 1]));
        let r = RationalSeries::new(num, den).unwrap().reduce_univariate().unwrap();
        assert_eq!(r.numerator, zpoly(&[1]));
        assert_eq!(r.denominator, zpoly(&[1, -4, 1]));
    }

    #[test]
    fn subst_neg_flips_odd_coefficients() {
        let h = UniPoly::from_i64(&[1, 4, 4, 1]);
        assert_eq!(h.subst_neg(), UniPoly::from_i64(&[1, -4, 4, -1]));
    }

    #[test]
    fn display_is_reasonable() {
        let p = zpoly(&[1, -4, 1]);
        assert_eq!(p.to_string(), "1 - 4*z + z^2");
    }
}
