//! Exact polynomials and rational functions in the dimension variable `n`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial in `n` with integer coefficients, stored densely from the
/// constant term upwards. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The variable `n`.
    pub fn var() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `a*n + b`.
    pub fn affine(a: i64, b: i64) -> Self {
        Self::from_i64s(&[b, a])
    }

    /// `c * n^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonnegative gcd of all coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Splits off the content, signed so that the primitive part has a
    /// positive leading coefficient.
    pub fn primitive(&self) -> (BigInt, IntPoly) {
        if self.is_zero() {
            return (BigInt::zero(), IntPoly::zero());
        }
        let mut c = self.content();
        if self.lead().unwrap().is_negative() {
            c = -c;
        }
        (c.clone(), self.div_scalar(&c))
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Exact division by an integer dividing every coefficient.
    pub fn div_scalar(&self, c: &BigInt) -> IntPoly {
        if c.is_one() {
            return self.clone();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a / c).collect() }
    }

    /// Multiplies by `n^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Quotient when `d` divides `self` exactly over the integers.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lc = d.lead().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo remainder by zero");
        let lc = d.lead().unwrap();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.lead().unwrap().clone();
            r = &r.scale(lc) - &d.shift(rd - dd).scale(&top);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive().1;
        let mut b = other.primitive().1;
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return IntPoly::one();
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive().1;
        }
        a
    }

    /// Factors out the content, powers of `n`, and linear factors `n - r`
    /// for small integer roots `r`.
    pub fn factor_small(&self) -> Factored {
        let (unit, mut q) = self.primitive();
        let mut n_pow = 0;
        while q.coeffs.len() > 1 && q.coeffs[0].is_zero() {
            q.coeffs.remove(0);
            n_pow += 1;
        }
        let mut linear = Vec::new();
        for r in root_candidates() {
            if q.is_constant() {
                break;
            }
            let rb = BigInt::from(r);
            if !(&q.coeffs[0] % &rb).is_zero() {
                continue;
            }
            let mut mult = 0;
            while !q.is_constant() && q.eval_int(&rb).is_zero() {
                q = q.div_exact(&IntPoly::affine(1, -r)).expect("root divides");
                mult += 1;
            }
            if mult > 0 {
                linear.push((r, mult));
            }
        }
        Factored { unit, n_pow, linear, rest: q }
    }

    pub fn render(&self, style: Style) -> String {
        render_expanded(self, style)
    }
}

fn root_candidates() -> impl Iterator<Item = i64> {
    (1..=64).flat_map(|r| [r, -r])
}

/// Product decomposition `unit * n^n_pow * prod (n - r)^m * rest`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub unit: BigInt,
    pub n_pow: u32,
    pub linear: Vec<(i64, u32)>,
    pub rest: IntPoly,
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) =
            if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(IntPoly, Add, add);
forward_owned!(IntPoly, Sub, sub);
forward_owned!(IntPoly, Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Ascii))
    }
}

/// Rational function `num / den` in lowest terms: the two polynomials share
/// no common factor, their contents are coprime, and the denominator has a
/// positive leading coefficient. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (mut num, mut den) = (num, den);
        if !den.is_constant() {
            let g = num.gcd(&den);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.lead().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: IntPoly::one(), den: IntPoly::one() }
    }

    /// The variable `n`.
    pub fn var() -> Self {
        RatFunc::from_poly(IntPoly::var())
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        RatFunc::from_poly(IntPoly::constant(c))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc { num: p, den: IntPoly::one() }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::canonical(IntPoly::constant(q.numer().clone()), IntPoly::constant(q.denom().clone()))
    }

    /// `n^k` for any integer `k`.
    pub fn n_pow(k: i64) -> Self {
        let m = IntPoly::monomial(1, k.unsigned_abs() as usize);
        if k >= 0 {
            RatFunc::from_poly(m)
        } else {
            RatFunc { num: IntPoly::one(), den: m }
        }
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The numerator if the function is a polynomial.
    pub fn as_poly(&self) -> Option<&IntPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// The value if the function is a constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| {
            BigRational::new(self.num.coeff(0), self.den.coeff(0))
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::canonical(self.num.scale(c), self.den.clone())
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole { factor: self.vanishing_factor(x), at: x.to_string() });
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_int(&self, x: i64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    fn vanishing_factor(&self, x: &BigRational) -> String {
        let fac = self.den.factor_small();
        if x.is_integer() {
            let r = x.to_integer().to_i64();
            if r == Some(0) && fac.n_pow > 0 {
                return "n".into();
            }
            if let Some((root, _)) = fac.linear.iter().find(|(root, _)| Some(*root) == r) {
                return format!("({})", linear_factor(*root, Style::Ascii));
            }
        }
        format!("({})", fac.rest.render(Style::Ascii))
    }

    /// Sign as `n` tends to infinity.
    pub fn leading_sign(&self) -> i32 {
        match self.num.lead() {
            None => 0,
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
        }
    }

    /// `deg(num) - deg(den)`, the exponent of the leading order in `n`.
    pub fn order(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    /// Leading coefficient as `n` tends to infinity.
    pub fn leading_coeff(&self) -> Option<BigRational> {
        Some(BigRational::new(self.num.lead()?.clone(), self.den.lead().unwrap().clone()))
    }

    /// True when rendering next to a monomial needs no parentheses.
    pub fn is_atomic(&self) -> bool {
        let terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        terms <= 1 && self.den.is_one()
    }

    pub fn render(&self, style: Style) -> String {
        render_ratfunc(self, style)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

forward_owned!(RatFunc, Add, add);
forward_owned!(RatFunc, Sub, sub);
forward_owned!(RatFunc, Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<IntPoly> for RatFunc {
    fn from(p: IntPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Style::Ascii))
    }
}

fn shifted_product(x: &IntPoly, k: i64, step: i64) -> RatFunc {
    let mut acc = IntPoly::one();
    for i in 0..k.unsigned_abs() as i64 {
        acc = &acc * &(x + &IntPoly::constant(step * i));
    }
    if k >= 0 {
        RatFunc::from_poly(acc)
    } else {
        RatFunc::new(IntPoly::one(), acc).expect("reciprocal of a zero product")
    }
}

/// `x (x-2) (x-4) ... (x-2k+2)`; negative `k` gives the reciprocal of the
/// `|k|`-term product.
///
/// Panics if `k < 0` and the product is identically zero.
pub fn fall2(x: &IntPoly, k: i64) -> RatFunc {
    shifted_product(x, k, -2)
}

/// `x (x+2) (x+4) ... (x+2k-2)`.
pub fn rise2(x: &IntPoly, k: i64) -> RatFunc {
    shifted_product(x, k, 2)
}

/// `x (x-1) ... (x-k+1)`.
pub fn fall1(x: &IntPoly, k: i64) -> RatFunc {
    shifted_product(x, k, -1)
}

/// `x (x+1) ... (x+k-1)`.
pub fn rise1(x: &IntPoly, k: i64) -> RatFunc {
    shifted_product(x, k, 1)
}

/// Output flavour for human-readable rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// `-8(n-1)/(n^8(n+2)^4)`
    Ascii,
    /// `−8(n−1)/(n⁸(n+2)⁴)`
    Unicode,
    /// `-\frac{8(n-1)}{n^{8}(n+2)^{4}}`
    Latex,
}

impl Style {
    pub fn minus(self) -> &'static str {
        match self {
            Style::Unicode => "\u{2212}",
            _ => "-",
        }
    }

    pub fn power(self, base: &str, e: u64) -> String {
        if e == 1 {
            return base.into();
        }
        match self {
            Style::Ascii => format!("{base}^{e}"),
            Style::Latex => format!("{base}^{{{e}}}"),
            Style::Unicode => {
                let mut s = String::from(base);
                s.extend(e.to_string().chars().map(superscript));
                s
            }
        }
    }
}

fn superscript(d: char) -> char {
    match d {
        '0' => '⁰',
        '1' => '¹',
        '2' => '²',
        '3' => '³',
        '4' => '⁴',
        '5' => '⁵',
        '6' => '⁶',
        '7' => '⁷',
        '8' => '⁸',
        '9' => '⁹',
        other => other,
    }
}

fn linear_factor(root: i64, style: Style) -> String {
    if root > 0 {
        format!("n{}{}", style.minus(), root)
    } else {
        format!("n+{}", -root)
    }
}

fn render_expanded(p: &IntPoly, style: Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push_str(style.minus());
            }
        } else {
            out.push_str(if neg { " " } else { " + " });
            if neg {
                out.push_str(style.minus());
                out.push(' ');
            }
        }
        let a = c.abs();
        if k == 0 || !a.is_one() {
            out.push_str(&a.to_string());
        }
        if k > 0 {
            out.push_str(&style.power("n", k as u64));
        }
    }
    out
}

/// Renders the factors of a positive-unit product. `count` receives the
/// number of multiplicative pieces so callers know when to parenthesize.
fn render_factors(f: &Factored, style: Style, count: &mut usize) -> String {
    let mut out = String::new();
    let unit = f.unit.abs();
    if !unit.is_one() {
        out.push_str(&unit.to_string());
        *count += 1;
    }
    if f.n_pow > 0 {
        out.push_str(&style.power("n", f.n_pow as u64));
        *count += 1;
    }
    let mut linear = f.linear.clone();
    linear.sort_by_key(|&(r, _)| (r.abs(), r < 0));
    for (r, m) in linear {
        out.push_str(&style.power(&format!("({})", linear_factor(r, style)), m as u64));
        *count += 1;
    }
    if !f.rest.is_one() {
        let r = f.rest.render(style);
        if *count == 0 && f.rest.coeffs().iter().filter(|c| !c.is_zero()).count() == 1 {
            out.push_str(&r);
        } else {
            out.push('(');
            out.push_str(&r);
            out.push(')');
        }
        *count += 1;
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

fn render_ratfunc(q: &RatFunc, style: Style) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let num_fac = q.num.factor_small();
    let sign = if num_fac.unit.is_negative() { style.minus() } else { "" };
    if q.den.is_one() {
        return render_expanded(&q.num, style);
    }
    let (num, num_count) = if q.den.is_constant() {
        let mut s = render_expanded(&q.num.scale(&num_fac.unit.signum()), style);
        let terms = q.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        if terms > 1 && style != Style::Latex {
            s = format!("({s})");
        }
        (s, 1)
    } else {
        let mut count = 0;
        (render_factors(&num_fac, style, &mut count), count)
    };
    let mut den_count = 0;
    let den = render_factors(&q.den.factor_small(), style, &mut den_count);
    let _ = num_count;
    match style {
        Style::Latex => format!("{sign}\\frac{{{num}}}{{{den}}}"),
        _ => {
            if den_count > 1 {
                format!("{sign}{num}/({den})")
            } else {
                format!("{sign}{num}/{den}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> IntPoly {
        IntPoly::var()
    }

    #[test]
    fn fall_and_rise_products() {
        assert_eq!(fall2(&n(), 2), RatFunc::from_poly(IntPoly::from_i64s(&[0, -2, 1])));
        assert_eq!(fall2(&IntPoly::constant(-2), 3), RatFunc::from_int(-48));
        assert_eq!(fall2(&n(), 0), RatFunc::one());
        assert_eq!(rise2(&n(), 2), RatFunc::from_poly(IntPoly::from_i64s(&[0, 2, 1])));
        assert_eq!(rise2(&n(), -1), RatFunc::n_pow(-1));
        assert_eq!(fall1(&n(), 1), RatFunc::var());
        assert_eq!(rise1(&n(), 3).eval_int(2).unwrap(), BigRational::from_integer(24.into()));
    }

    #[test]
    fn canonical_reduction() {
        let q = RatFunc::new(IntPoly::from_i64s(&[-4, 0, 1]), IntPoly::affine(1, -2)).unwrap();
        assert_eq!(q, RatFunc::from_poly(IntPoly::affine(1, 2)));
        let a = RatFunc::new(IntPoly::affine(1, -1), IntPoly::var()).unwrap();
        let b = RatFunc::n_pow(-1);
        assert_eq!(&a + &b, RatFunc::one());
        assert_eq!(&b * &RatFunc::var(), RatFunc::one());
        let c = RatFunc::new(IntPoly::from_i64s(&[2]), IntPoly::from_i64s(&[0, -4])).unwrap();
        assert_eq!(c.numer(), &IntPoly::constant(-1));
        assert_eq!(c.denom(), &IntPoly::from_i64s(&[0, 2]));
    }

    fn k5_value() -> RatFunc {
        let num = IntPoly::constant(-8)
            * IntPoly::affine(1, -1)
            * IntPoly::affine(1, -2)
            * IntPoly::affine(1, -4);
        let den = IntPoly::monomial(1, 8) * IntPoly::affine(1, 2).pow(4);
        RatFunc::new(num, den).unwrap()
    }

    #[test]
    fn evaluation_and_poles() {
        let v = k5_value().eval_int(5).unwrap();
        assert_eq!(v, BigRational::new((-96).into(), 937_890_625.into()));
        let err = RatFunc::n_pow(-1).eval_int(0).unwrap_err();
        assert!(matches!(err, Error::Pole { ref factor, .. } if factor == "n"));
        let err = k5_value().eval_int(-2).unwrap_err();
        assert!(matches!(err, Error::Pole { ref factor, .. } if factor == "(n+2)"));
        assert_eq!(
            RatFunc::from_poly(&n() * &(&n() + &IntPoly::constant(2))).eval_int(3).unwrap(),
            BigRational::from_integer(15.into())
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(k5_value().render(Style::Ascii), "-8(n-1)(n-2)(n-4)/(n^8(n+2)^4)");
        assert_eq!(
            k5_value().render(Style::Unicode),
            "\u{2212}8(n\u{2212}1)(n\u{2212}2)(n\u{2212}4)/(n⁸(n+2)⁴)"
        );
        assert_eq!(
            k5_value().render(Style::Latex),
            "-\\frac{8(n-1)(n-2)(n-4)}{n^{8}(n+2)^{4}}"
        );
        assert_eq!(RatFunc::n_pow(-1).to_string(), "1/n");
        assert_eq!(RatFunc::from_poly(IntPoly::affine(3, -2)).to_string(), "3n - 2");
        let half = RatFunc::from_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn polynomial_gcd() {
        let a = IntPoly::affine(1, -1) * IntPoly::affine(2, 3) * IntPoly::affine(1, 5);
        let b = IntPoly::affine(2, 3) * IntPoly::affine(1, 7) * IntPoly::constant(6);
        assert_eq!(a.gcd(&b), IntPoly::affine(2, 3));
        assert_eq!(a.gcd(&IntPoly::constant(4)), IntPoly::one());
    }

    #[test]
    fn factoring_recovers_linear_factors() {
        let p = IntPoly::constant(-16)
            * IntPoly::affine(1, -1)
            * IntPoly::affine(1, -2).pow(2)
            * IntPoly::affine(1, -4);
        let f = p.factor_small();
        assert_eq!(f.unit, BigInt::from(-16));
        assert_eq!(f.linear, vec![(1, 1), (2, 2), (4, 1)]);
        assert!(f.rest.is_one());
    }
}
