//! Dense univariate polynomials: `GPoly` over the exact field `Q(i)` with
//! the full Euclidean toolkit (gcd, Yun squarefree decomposition, Taylor
//! shift, resultants via Bareiss elimination), and `CPoly` over
//! [`CoeffValue`] for the few places where certified coefficients appear in
//! univariate form.

use super::bigfloat::FloatComplex;
use super::coeff::CoeffValue;
use super::gauss::GaussianRational;
use crate::ctx::Ctx;
use crate::Result;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Polynomial over `Q(i)`, coefficient of `z^k` at index `k`, no trailing
/// zeros (the zero polynomial stores an empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GPoly {
    coeffs: Vec<GaussianRational>,
}

impl GPoly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        GPoly { coeffs }
    }

    pub fn zero() -> Self {
        GPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        GPoly::constant(GaussianRational::from_int(1))
    }

    pub fn constant(c: GaussianRational) -> Self {
        GPoly::new(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        let mut coeffs = vec![GaussianRational::default(); k];
        coeffs.push(c);
        GPoly::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        GPoly::new(coeffs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0, or `None` for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::default();
        for c in self.coeffs.iter().rev() {
            acc = &acc * z + c;
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        GPoly::new(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        GPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return GPoly::zero();
        }
        let mut out = vec![GaussianRational::default(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                out[i + j] += &prod;
            }
        }
        GPoly::new(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        GPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return GPoly::zero();
        }
        let mut coeffs = vec![GaussianRational::default(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        GPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return GPoly::zero();
        }
        GPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * &GaussianRational::from_int(k as i64 + 1))
                .collect(),
        )
    }

    /// Euclidean division by a nonzero divisor: `(quotient, remainder)`.
    pub fn divrem(&self, rhs: &Self) -> (Self, Self) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let d = rhs.degree().unwrap();
        let lead_inv = rhs.leading().unwrap().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (GPoly::zero(), self.clone());
        }
        let mut quo = vec![GaussianRational::default(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lead_inv;
            for j in 0..d {
                let t = &q * &rhs.coeffs[j];
                rem[k - d + j] -= &t;
            }
            rem[k] = GaussianRational::default();
            quo[k - d] = q;
        }
        (GPoly::new(quo), GPoly::new(rem))
    }

    /// Division known to be exact; panics on a nonzero remainder (an
    /// internal-logic bug, never a data condition).
    pub fn exact_div(&self, rhs: &Self) -> Self {
        let (q, r) = self.divrem(rhs);
        assert!(r.is_zero(), "exact_div had a remainder");
        q
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => GPoly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic gcd over the field `Q(i)`.
    ///
    /// Runs a primitive pseudo-remainder sequence over the Gaussian
    /// integers: plain rational Euclid blows coefficient sizes up badly
    /// enough to dominate whole-germ analyses, while integer remainders
    /// with content stripping keep every intermediate reduced.
    pub fn gcd(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        let mut a = zi_primitive(zi_from_poly(self));
        let mut b = zi_primitive(zi_from_poly(rhs));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = zi_prem(&a, &b);
            a = b;
            b = zi_primitive(r);
        }
        zi_to_poly(&a).monic()
    }

    /// Yun's squarefree decomposition: returns monic `(factor, power)`
    /// pairs with distinct squarefree factors, `self = lc * prod f_k^k`.
    pub fn squarefree_decomposition(&self) -> Vec<(GPoly, usize)> {
        assert!(!self.is_zero(), "squarefree decomposition of zero");
        if self.is_constant() {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let u = f.gcd(&df);
        let mut v = f.exact_div(&u);
        let mut w = df.exact_div(&u);
        let mut out = Vec::new();
        let mut mult = 1usize;
        while !v.is_constant() {
            let s = w.sub(&v.derivative());
            let g = v.gcd(&s);
            if !g.is_constant() {
                out.push((g.clone(), mult));
            }
            v = v.exact_div(&g);
            w = s.exact_div(&g);
            mult += 1;
        }
        out
    }

    /// Product of the distinct monic irreducible-ish factors (radical).
    pub fn squarefree_part(&self) -> Self {
        let mut out = GPoly::one();
        for (f, _) in self.squarefree_decomposition() {
            out = out.mul(&f);
        }
        out
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.is_constant() {
            return true;
        }
        self.gcd(&self.derivative()).is_constant()
    }

    /// `p(z + a)` by Horner.
    pub fn taylor_shift(&self, a: &GaussianRational) -> Self {
        let shift = GPoly::new(vec![a.clone(), GaussianRational::from_int(1)]);
        let mut acc = GPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift).add(&GPoly::constant(c.clone()));
        }
        acc
    }

    /// Approximate complex coefficients for numeric seeding.
    pub fn to_float_coeffs(&self, prec: u32) -> Vec<FloatComplex> {
        self.coeffs
            .iter()
            .map(|c| {
                let (re, _) = super::bigfloat::BigFloat::from_rational(c.re(), prec);
                let (im, _) = super::bigfloat::BigFloat::from_rational(c.im(), prec);
                FloatComplex::new(re, im)
            })
            .collect()
    }

    /// Clear denominators: the returned polynomial has Gaussian-integer
    /// coefficients and the same roots.
    pub fn clear_denominators(&self) -> Self {
        let mut lcm = BigInt::from(1);
        for c in &self.coeffs {
            lcm = num_integer::lcm(lcm.clone(), c.re().denom().clone());
            lcm = num_integer::lcm(lcm, c.im().denom().clone());
        }
        let factor = GaussianRational::from_rational(BigRational::from_integer(lcm));
        self.scale(&factor)
    }

    /// Render in the variable `var`, lowest degree first.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var_part = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, k),
            };
            let body = if var_part.is_empty() {
                if c.is_real() || c.re().is_zero() {
                    c.to_display_string()
                } else {
                    format!("({})", c.to_display_string())
                }
            } else if c.is_one() {
                var_part
            } else if (-c).is_one() {
                format!("-{}", var_part)
            } else if c.is_real() {
                format!("{}*{}", c.to_display_string(), var_part)
            } else {
                format!("({})*{}", c.to_display_string(), var_part)
            };
            parts.push(body);
        }
        let mut out = String::new();
        for (idx, p) in parts.iter().enumerate() {
            if idx == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

/// Support for the integer pseudo-remainder gcd: dense polynomial over the
/// Gaussian integers, coefficient of `z^k` at index `k`, trimmed.
type ZiPoly = Vec<(BigInt, BigInt)>;

fn zi_is_zero(c: &(BigInt, BigInt)) -> bool {
    c.0.is_zero() && c.1.is_zero()
}

fn zi_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn zi_sub(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 - &b.0, &a.1 - &b.1)
}

/// Nearest-Gaussian-integer division `a / b`, remainder returned; the
/// remainder norm is at most half of `N(b)` in each rounded component, so
/// the Euclidean recursion on norms terminates.
fn zi_divround(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    use num_integer::Integer;
    let norm = &b.0 * &b.0 + &b.1 * &b.1;
    let num = zi_mul(a, &(b.0.clone(), -b.1.clone()));
    let half = |n: BigInt| -> BigInt {
        let two = BigInt::from(2);
        (n * &two + &norm).div_floor(&(&norm * &two))
    };
    let q = (half(num.0), half(num.1));
    zi_sub(a, &zi_mul(&q, b))
}

/// Gcd of two Gaussian integers (any associate; content use only).
fn zi_gcd(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let mut x = a.clone();
    let mut y = b.clone();
    while !zi_is_zero(&y) {
        let r = zi_divround(&x, &y);
        x = y;
        y = r;
    }
    x
}

/// Exact division `a / b` in `Z[i]`; callers guarantee divisibility.
fn zi_divexact(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    let norm = &b.0 * &b.0 + &b.1 * &b.1;
    let num = zi_mul(a, &(b.0.clone(), -b.1.clone()));
    (num.0 / &norm, num.1 / &norm)
}

fn zi_trim(v: &mut ZiPoly) {
    while v.last().map_or(false, zi_is_zero) {
        v.pop();
    }
}

/// Clear denominators: the polynomial scaled into `Z[i]` coefficients.
/// Gcds over the field are scale-invariant, so the factor is dropped.
fn zi_from_poly(p: &GPoly) -> ZiPoly {
    use num_integer::Integer;
    let mut lcm = BigInt::from(1);
    for c in &p.coeffs {
        lcm = lcm.lcm(c.re().denom());
        lcm = lcm.lcm(c.im().denom());
    }
    let mut out: ZiPoly = p
        .coeffs
        .iter()
        .map(|c| {
            (
                c.re().numer() * (&lcm / c.re().denom()),
                c.im().numer() * (&lcm / c.im().denom()),
            )
        })
        .collect();
    zi_trim(&mut out);
    out
}

fn zi_to_poly(v: &ZiPoly) -> GPoly {
    GPoly::new(
        v.iter()
            .map(|(re, im)| {
                GaussianRational::new(
                    BigRational::from_integer(re.clone()),
                    BigRational::from_integer(im.clone()),
                )
            })
            .collect(),
    )
}

/// Divide out the Gaussian-integer content.
fn zi_primitive(mut v: ZiPoly) -> ZiPoly {
    zi_trim(&mut v);
    let mut content = (BigInt::from(0), BigInt::from(0));
    for c in v.iter().filter(|c| !zi_is_zero(c)) {
        content = zi_gcd(&content, c);
        if (&content.0 * &content.0 + &content.1 * &content.1) == BigInt::from(1) {
            return v;
        }
    }
    if zi_is_zero(&content) {
        return v;
    }
    for c in v.iter_mut() {
        *c = zi_divexact(c, &content);
    }
    v
}

/// One full pseudo-remainder pass: repeatedly `r := lc(g)*r - lr*z^s*g`
/// until `deg r < deg g`.  Integer-only; the accumulated leading-factor
/// scaling is irrelevant because the caller strips content next.
fn zi_prem(f: &ZiPoly, g: &ZiPoly) -> ZiPoly {
    let dg = g.len() - 1;
    let lg = g.last().unwrap().clone();
    let mut r = f.clone();
    zi_trim(&mut r);
    while !r.is_empty() && r.len() - 1 >= dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = zi_mul(c, &lg);
        }
        for (k, gc) in g.iter().enumerate() {
            let s = zi_mul(&lr, gc);
            r[dr - dg + k] = zi_sub(&r[dr - dg + k], &s);
        }
        zi_trim(&mut r);
    }
    r
}

/// Fraction-free Bareiss determinant of a square matrix over `Q(i)[w]`.
/// Used for Sylvester resultants; exact divisions are guaranteed by the
/// Bareiss recurrence.
pub(crate) fn det_bareiss(mut m: Vec<Vec<GPoly>>) -> GPoly {
    let n = m.len();
    if n == 0 {
        return GPoly::one();
    }
    let mut sign = false;
    let mut prev = GPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return GPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.exact_div(&prev);
            }
            m[i][k] = GPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// `Res_z(p(z), q(z))` for univariate `p`, `q` given as polynomials in `z`
/// whose coefficients are themselves polynomials in another variable.
/// `p`, `q` are slices of coefficients (index = power of `z`).
pub(crate) fn resultant_poly_coeffs(p: &[GPoly], q: &[GPoly]) -> GPoly {
    let dp = p.len().checked_sub(1).expect("resultant of empty polynomial");
    let dq = q.len().checked_sub(1).expect("resultant of empty polynomial");
    if dp == 0 && dq == 0 {
        return GPoly::one();
    }
    let n = dp + dq;
    let mut m = vec![vec![GPoly::zero(); n]; n];
    for row in 0..dq {
        for (k, c) in p.iter().enumerate() {
            m[row][row + dp - k] = c.clone();
        }
    }
    for row in 0..dp {
        for (k, c) in q.iter().enumerate() {
            m[dq + row][row + dq - k] = c.clone();
        }
    }
    det_bareiss(m)
}

/// Univariate polynomial with pipeline coefficients (exact or certified).
#[derive(Debug, Clone)]
pub struct CPoly {
    coeffs: Vec<CoeffValue>,
}

impl CPoly {
    /// No normalization beyond dropping *provably* zero leading terms is
    /// attempted; callers construct `CPoly`s whose leading coefficient is
    /// known nonzero.
    pub fn new(mut coeffs: Vec<CoeffValue>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_provably_zero()) {
            coeffs.pop();
        }
        CPoly { coeffs }
    }

    pub fn from_exact(p: &GPoly) -> Self {
        CPoly { coeffs: p.coeffs().iter().cloned().map(CoeffValue::Exact).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> CoeffValue {
        self.coeffs.get(k).cloned().unwrap_or_else(CoeffValue::zero)
    }

    pub fn coeffs(&self) -> &[CoeffValue] {
        &self.coeffs
    }

    /// All coefficients exact?
    pub fn all_exact(&self) -> bool {
        self.coeffs.iter().all(|c| matches!(c, CoeffValue::Exact(_)))
    }

    /// Recover a `GPoly` when every coefficient is exact.
    pub fn to_exact(&self) -> Option<GPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            match c {
                CoeffValue::Exact(q) => out.push(q.clone()),
                _ => return None,
            }
        }
        Some(GPoly::new(out))
    }

    pub fn eval(&self, z: &CoeffValue, ctx: &Ctx) -> Result<CoeffValue> {
        let mut acc = CoeffValue::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z, ctx)?.add(c, ctx)?;
        }
        Ok(acc)
    }

    /// `p(z + a)` by Horner over `CoeffValue`.
    pub fn taylor_shift(&self, a: &CoeffValue, ctx: &Ctx) -> Result<CPoly> {
        let mut acc: Vec<CoeffValue> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // acc = acc * (z + a) + c
            let mut next = vec![CoeffValue::zero(); acc.len() + 1];
            for (k, t) in acc.iter().enumerate() {
                next[k + 1] = next[k + 1].add(t, ctx)?;
                let ta = t.mul(a, ctx)?;
                next[k] = next[k].add(&ta, ctx)?;
            }
            next[0] = next[0].add(c, ctx)?;
            acc = next;
        }
        Ok(CPoly { coeffs: acc })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gp(coeffs: &[i64]) -> GPoly {
        GPoly::from_ints(coeffs)
    }

    #[test]
    fn divrem_reconstructs() {
        let a = gp(&[2, 0, -3, 1, 4]);
        let b = gp(&[1, 2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let common = gp(&[-1, 1]); // z - 1
        let a = common.mul(&gp(&[3, 0, 1]));
        let b = common.mul(&gp(&[2, 5]));
        assert_eq!(a.gcd(&b), common.monic());
        // Coprime pair.
        assert!(gp(&[1, 1]).gcd(&gp(&[2, 1])).is_constant());
    }

    #[test]
    fn yun_decomposition() {
        // (z-1)^2 (z+2)^3 z
        let f = gp(&[-1, 1]) // z-1
            .mul(&gp(&[-1, 1]))
            .mul(&gp(&[2, 1]))
            .mul(&gp(&[2, 1]))
            .mul(&gp(&[2, 1]))
            .mul(&gp(&[0, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], (gp(&[0, 1]), 1));
        assert_eq!(dec[1], (gp(&[-1, 1]), 2));
        assert_eq!(dec[2], (gp(&[2, 1]), 3));
        assert!(!f.is_squarefree());
        assert!(f.squarefree_part().is_squarefree());
    }

    #[test]
    fn taylor_shift_matches_eval() {
        let f = gp(&[1, -4, 0, 2, 7]);
        let a = GaussianRational::from_parts(1, 2, -1, 3);
        let shifted = f.taylor_shift(&a);
        for t in [-3i64, 0, 2, 5] {
            let z = GaussianRational::from_int(t);
            assert_eq!(shifted.eval(&z), f.eval(&(&z + &a)));
        }
    }

    #[test]
    fn resultant_detects_common_roots() {
        // Res(z^2 - 1, z - 1) = 0; Res(z^2 - 1, z - 2) = 3.
        let p = [gp(&[-1]), gp(&[0]), gp(&[1])];
        let q = [gp(&[-1]), gp(&[1])];
        assert!(resultant_poly_coeffs(&p, &q).is_zero());
        let q2 = [gp(&[-2]), gp(&[1])];
        let r = resultant_poly_coeffs(&p, &q2);
        assert_eq!(r, GPoly::from_ints(&[3]));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(gp(&[-1, 0, 1]).to_text("z"), "-1 + z^2");
        assert_eq!(gp(&[0, -2, 0, 1]).to_text("z"), "-2*z + z^3");
        assert_eq!(GPoly::zero().to_text("z"), "0");
    }

    fn arb_poly() -> impl Strategy<Value = GPoly> {
        prop::collection::vec(-6i64..6, 1..6).prop_map(|v| GPoly::from_ints(&v))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let g = a.gcd(&b);
            prop_assert!(a.divrem(&g).1.is_zero());
            prop_assert!(b.divrem(&g).1.is_zero());
        }

        #[test]
        fn yun_reconstructs(a in arb_poly(), b in arb_poly(), e1 in 1usize..3, e2 in 1usize..3) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assume!(a.degree().unwrap() > 0);
            let mut f = GPoly::one();
            for _ in 0..e1 { f = f.mul(&a); }
            for _ in 0..e2 { f = f.mul(&b); }
            let mut back = GPoly::one();
            for (g, k) in f.squarefree_decomposition() {
                prop_assert!(g.is_squarefree());
                for _ in 0..k { back = back.mul(&g); }
            }
            prop_assert_eq!(back, f.monic());
        }
    }
}
