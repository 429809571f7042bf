use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::ring::{GenImage, Monomial, RingKind, RingSpec};
use crate::Rational;

/// Element of a polynomial ring or Weyl algebra with exact rational
/// coefficients, stored as a map from normal-order monomials to nonzero
/// coefficients. The map's key order is the canonical term order, so the
/// leading term is the last entry.
#[derive(Clone, PartialEq, Eq)]
pub struct OrePoly {
    ring: RingSpec,
    terms: BTreeMap<Monomial, Rational>,
}

fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl OrePoly {
    pub fn zero(ring: &RingSpec) -> Self {
        OrePoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &RingSpec) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &RingSpec, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.ngens()), c);
        }
        OrePoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn int(ring: &RingSpec, n: i64) -> Self {
        Self::constant(ring, rat_int(n))
    }

    /// The generator with index `i` (base variable or partial).
    pub fn gen(ring: &RingSpec, i: usize) -> Self {
        assert!(i < ring.ngens());
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::gen(ring.ngens(), i), Rational::one());
        OrePoly {
            ring: ring.clone(),
            terms,
        }
    }

    /// The generator with the given name. Panics if it does not exist.
    pub fn var(ring: &RingSpec, name: &str) -> Self {
        let i = ring
            .gen_index(name)
            .unwrap_or_else(|| panic!("unknown generator `{name}`"));
        Self::gen(ring, i)
    }

    pub fn monomial(ring: &RingSpec, mono: Monomial, coeff: Rational) -> Self {
        assert_eq!(mono.ngens(), ring.ngens());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        OrePoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(
        ring: &RingSpec,
        iter: I,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Leading (maximal) term, if nonzero.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_ring(&self, other: &OrePoly) {
        assert!(
            self.ring == other.ring,
            "ring mismatch: {:?} vs {:?}",
            self.ring,
            other.ring
        );
    }

    pub fn scale(&self, c: &Rational) -> OrePoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        OrePoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, q)| (m.clone(), q * c))
                .collect(),
        }
    }

    /// Divide by the leading coefficient so the leading coefficient is 1.
    pub fn monic(&self) -> OrePoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Left multiplication by a plain monomial (coefficient 1).
    ///
    /// In the Weyl algebra the monomial's partial block acts on the base
    /// block of each term of `self`, so this is a full ring product.
    pub fn mul_monomial_left(&self, mono: &Monomial) -> OrePoly {
        let m = OrePoly::monomial(&self.ring, mono.clone(), Rational::one());
        &m * self
    }

    /// Normal-ordered product of two monomial words.
    ///
    /// For commutative rings exponents simply add. In the Weyl algebra the
    /// partial block of `a` must be commuted past the base block of `b`:
    /// per variable, `∂^s x^t = Σ_k C(s,k) C(t,k) k! x^{t-k} ∂^{s-k}`.
    fn mul_monomials(ring: &RingSpec, a: &Monomial, b: &Monomial, out: &mut Vec<(Monomial, Rational)>) {
        let d = ring.dim();
        match ring.kind() {
            RingKind::Commutative => out.push((a.exp_mul(b), Rational::one())),
            RingKind::Weyl => {
                // x^(a0) ∂^(a1) · x^(b0) ∂^(b1):
                // commute ∂^(a1) past x^(b0) variable by variable.
                let mut stack: Vec<(usize, Vec<u32>, BigInt)> =
                    vec![(0, Vec::with_capacity(d), BigInt::one())];
                while let Some((i, ks, c)) = stack.pop() {
                    if i == d {
                        let mut exps = Vec::with_capacity(2 * d);
                        for j in 0..d {
                            exps.push(a.exp(j) + b.exp(j) - ks[j]);
                        }
                        for j in 0..d {
                            exps.push(a.exp(d + j) + b.exp(d + j) - ks[j]);
                        }
                        out.push((
                            Monomial::from_exps(exps),
                            Rational::from_integer(c),
                        ));
                        continue;
                    }
                    let s = a.exp(d + i); // ∂-exponent on the left factor
                    let t = b.exp(i); // x-exponent on the right factor
                    let kmax = s.min(t);
                    for k in 0..=kmax {
                        let mut ks2 = ks.clone();
                        ks2.push(k);
                        stack.push((i + 1, ks2, &c * commutator_coeff(s, t, k)));
                    }
                }
            }
        }
    }

    /// Raise to a nonnegative integer power by repeated multiplication.
    pub fn pow(&self, n: u32) -> OrePoly {
        let mut acc = Self::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Apply the operator to a polynomial in the base variables: partials
    /// act as formal derivations, base variables as multiplication.
    ///
    /// `f` must live in the commutative base ring of `self.ring()`.
    pub fn apply_to(&self, f: &OrePoly) -> OrePoly {
        let base = self.ring.base_ring();
        assert!(
            *f.ring() == base,
            "operand must live in the base ring of the operator"
        );
        let d = self.ring.dim();
        let mut out = OrePoly::zero(&base);
        for (m, c) in &self.terms {
            // ∂^b f
            let mut g = f.clone();
            for i in 0..d {
                let b = if self.ring.is_weyl() { m.exp(d + i) } else { 0 };
                for _ in 0..b {
                    g = g.derivative(i);
                }
            }
            // x^a ∂^b f
            let xa = OrePoly::monomial(
                &base,
                Monomial::from_exps(m.exps()[..d].to_vec()),
                c.clone(),
            );
            out = &out + &(&xa * &g);
        }
        out
    }

    /// Formal partial derivative with respect to generator `i` of a
    /// commutative polynomial.
    pub fn derivative(&self, i: usize) -> OrePoly {
        assert_eq!(self.ring.kind(), RingKind::Commutative);
        let mut out = OrePoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] = e - 1;
            out.add_term(Monomial::from_exps(exps), c * rat_int(e as i64));
        }
        out
    }

    /// The involution θ: fixes base variables, sends every partial `∂ᵢ` to
    /// `−∂ᵢ`, and reverses products. On a commutative ring it is the
    /// identity.
    pub fn involution(&self) -> OrePoly {
        if !self.ring.is_weyl() {
            return self.clone();
        }
        let d = self.ring.dim();
        let mut out = OrePoly::zero(&self.ring);
        for (m, c) in &self.terms {
            // θ(x^a ∂^b) = (−∂)^b x^a, then normal order ∂^b x^a.
            let mut dpart = vec![0u32; 2 * d];
            let mut xpart = vec![0u32; 2 * d];
            let mut bsum = 0u32;
            for i in 0..d {
                xpart[i] = m.exp(i);
                dpart[d + i] = m.exp(d + i);
                bsum += m.exp(d + i);
            }
            let sign = if bsum % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let mut words = Vec::new();
            Self::mul_monomials(
                &self.ring,
                &Monomial::from_exps(dpart),
                &Monomial::from_exps(xpart),
                &mut words,
            );
            for (mono, q) in words {
                out.add_term(mono, c * &sign * q);
            }
        }
        out
    }

    /// Substitute each generator by a generator of `target` or a constant.
    /// Only valid for commutative polynomials.
    pub fn map_gens(&self, target: &RingSpec, images: &[GenImage]) -> OrePoly {
        assert_eq!(self.ring.kind(), RingKind::Commutative);
        assert_eq!(images.len(), self.ring.ngens());
        let mut out = OrePoly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.ngens()];
            let mut coeff = c.clone();
            for (i, img) in images.iter().enumerate() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match img {
                    GenImage::Gen(j) => exps[*j] += e,
                    GenImage::Const(v) => {
                        let mut pw = Rational::one();
                        for _ in 0..e {
                            pw *= v;
                        }
                        coeff *= pw;
                    }
                }
            }
            out.add_term(Monomial::from_exps(exps), coeff);
        }
        out
    }

    /// Evaluate a commutative polynomial at a rational point.
    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert_eq!(self.ring.kind(), RingKind::Commutative);
        assert_eq!(point.len(), self.ring.ngens());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, v) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t *= v;
                }
            }
            acc += t;
        }
        acc
    }

    /// Evaluate a commutative polynomial at a floating point, terms summed
    /// in canonical ascending order.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(self.ring.kind(), RingKind::Commutative);
        assert_eq!(point.len(), self.ring.ngens());
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (i, v) in point.iter().enumerate() {
                t *= v.powi(m.exp(i) as i32);
            }
            acc += t;
        }
        acc
    }
}

/// `C(s,k)·C(t,k)·k!` as a big integer: the coefficient picked up when
/// commuting `∂^s` past `x^t` while contracting `k` pairs.
fn commutator_coeff(s: u32, t: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    // binom(s,k) * binom(t,k) * k!
    for j in 0..k {
        acc *= BigInt::from(s - j);
    }
    for j in 0..k {
        acc *= BigInt::from(t - j);
    }
    for j in 1..=k {
        acc /= BigInt::from(j);
    }
    acc
}

/// Conversion of a rational to the nearest `f64`.
pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

impl Add for &OrePoly {
    type Output = OrePoly;
    fn add(self, rhs: &OrePoly) -> OrePoly {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &OrePoly {
    type Output = OrePoly;
    fn sub(self, rhs: &OrePoly) -> OrePoly {
        self.assert_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        OrePoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &OrePoly {
    type Output = OrePoly;
    /// Normal-ordered ring product. Panics on ring mismatch.
    fn mul(self, rhs: &OrePoly) -> OrePoly {
        self.assert_same_ring(rhs);
        let mut out = OrePoly::zero(&self.ring);
        let mut words = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                words.clear();
                OrePoly::mul_monomials(&self.ring, ma, mb, &mut words);
                let c = ca * cb;
                for (mono, q) in words.drain(..) {
                    out.add_term(mono, &c * q);
                }
            }
        }
        out
    }
}

impl fmt::Display for OrePoly {
    /// Canonical text form: terms in descending term order, every
    /// coefficient printed as a reduced fraction, e.g. `-1*z*Dy + 1*y*Dz`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx == 0 {
                write!(f, "{}", format_term(&self.ring, m, c))?;
            } else if c.is_negative() {
                write!(f, " - {}", format_term(&self.ring, m, &-c.clone()))?;
            } else {
                write!(f, " + {}", format_term(&self.ring, m, c))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrePoly({self})")
    }
}

fn format_term(ring: &RingSpec, m: &Monomial, c: &Rational) -> String {
    if m.is_one() {
        return format!("{c}");
    }
    let mut s = format!("{c}");
    for i in 0..ring.ngens() {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        s.push('*');
        s.push_str(ring.gen_name(i));
        if e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weyl_xyz() -> RingSpec {
        RingSpec::weyl(&["x", "y", "z"])
    }

    #[test]
    fn weyl_defining_relation() {
        // ∂ᵢ xⱼ − xⱼ ∂ᵢ = δᵢⱼ for all pairs up to d = 3.
        let r = weyl_xyz();
        let d = r.dim();
        for i in 0..d {
            for j in 0..d {
                let di = OrePoly::gen(&r, d + i);
                let xj = OrePoly::gen(&r, j);
                let comm = &(&di * &xj) - &(&xj * &di);
                let expected = if i == j {
                    OrePoly::one(&r)
                } else {
                    OrePoly::zero(&r)
                };
                assert_eq!(comm, expected, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn dx_times_x_squared() {
        // ∂x · x² = x²∂x + 2x
        let r = weyl_xyz();
        let dx = OrePoly::var(&r, "Dx");
        let x = OrePoly::var(&r, "x");
        let got = &dx * &x.pow(2);
        let expected = &(&x.pow(2) * &dx) + &x.scale(&rat_int(2));
        assert_eq!(got, expected);
    }

    #[test]
    fn mixed_product_via_application() {
        // (x∂y)(y∂x) = xy∂x∂y + x∂x, checked by applying both sides to x²y².
        let r = weyl_xyz();
        let x = OrePoly::var(&r, "x");
        let y = OrePoly::var(&r, "y");
        let dx = OrePoly::var(&r, "Dx");
        let dy = OrePoly::var(&r, "Dy");
        let lhs = &(&x * &dy) * &(&y * &dx);
        let expected = &(&(&(&x * &y) * &dx) * &dy) + &(&x * &dx);
        assert_eq!(lhs, expected);

        let base = r.base_ring();
        let f = {
            let xb = OrePoly::var(&base, "x");
            let yb = OrePoly::var(&base, "y");
            &xb.pow(2) * &yb.pow(2)
        };
        let via_product = lhs.apply_to(&f);
        let a = &x * &dy;
        let b = &y * &dx;
        let nested = a.apply_to(&b.apply_to(&f));
        assert_eq!(via_product, nested);
    }

    #[test]
    fn commutative_product() {
        let r = RingSpec::commutative(&["x", "y"]);
        let x = OrePoly::var(&r, "x");
        let y = OrePoly::var(&r, "y");
        let xy = &x * &y;
        assert_eq!(format!("{xy}"), "1*x*y");
    }

    #[test]
    fn involution_of_x_dx() {
        // θ(x∂x) = θ(∂x)θ(x) = −∂x·x = −x∂x − 1.
        let r = RingSpec::weyl(&["x"]);
        let x = OrePoly::var(&r, "x");
        let dx = OrePoly::var(&r, "Dx");
        let got = (&x * &dx).involution();
        let expected = &-&(&x * &dx) - &OrePoly::one(&r);
        assert_eq!(got, expected);
        // θ is an involution.
        assert_eq!(got.involution(), &x * &dx);
    }

    #[test]
    fn display_canonical_form() {
        let r = weyl_xyz();
        let y = OrePoly::var(&r, "y");
        let z = OrePoly::var(&r, "z");
        let dy = OrePoly::var(&r, "Dy");
        let dz = OrePoly::var(&r, "Dz");
        let p = &(&y * &dz) - &(&z * &dy);
        assert_eq!(format!("{p}"), "-1*z*Dy + 1*y*Dz");
    }

    #[test]
    fn derivative_and_eval() {
        let r = RingSpec::commutative(&["x", "y"]);
        let x = OrePoly::var(&r, "x");
        let y = OrePoly::var(&r, "y");
        let p = &(&x.pow(2) * &y) + &x; // x²y + x
        let px = p.derivative(0); // 2xy + 1
        assert_eq!(px, &(&x * &y).scale(&rat_int(2)) + &OrePoly::one(&r));
        assert_eq!(
            p.eval_rational(&[rat_int(2), rat_int(3)]),
            rat_int(14)
        );
        assert!((p.eval_f64(&[2.0, 3.0]) - 14.0).abs() < 1e-12);
    }
}
