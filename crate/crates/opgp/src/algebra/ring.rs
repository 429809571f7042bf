use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Which flavour of operator ring a [`RingSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    /// Ordinary commutative polynomial ring `ℚ[x₁..x_d]`.
    Commutative,
    /// Weyl algebra `ℚ[x₁..x_d]⟨∂₁..∂_d⟩` with `∂ᵢxⱼ = xⱼ∂ᵢ + δᵢⱼ`.
    Weyl,
}

#[derive(Debug)]
struct RingData {
    kind: RingKind,
    dim: usize,
    /// Base variable names followed by partial names (Weyl only).
    names: Vec<String>,
}

/// Shared description of an operator ring: dimension, kind and generator
/// names. Cheap to clone; equality is structural.
#[derive(Clone)]
pub struct RingSpec(Arc<RingData>);

impl RingSpec {
    fn new(kind: RingKind, names: Vec<String>) -> Self {
        let dim = match kind {
            RingKind::Commutative => names.len(),
            RingKind::Weyl => {
                assert!(names.len() % 2 == 0, "Weyl ring needs 2d generator names");
                names.len() / 2
            }
        };
        assert!(dim >= 1, "ring dimension must be at least 1");
        for (i, a) in names.iter().enumerate() {
            assert!(!a.is_empty(), "empty generator name");
            for b in names.iter().skip(i + 1) {
                assert!(a != b, "duplicate generator name `{a}`");
            }
        }
        RingSpec(Arc::new(RingData { kind, dim, names }))
    }

    /// Commutative polynomial ring with the given variable names.
    pub fn commutative(names: &[&str]) -> Self {
        Self::new(
            RingKind::Commutative,
            names.iter().map(|s| s.to_string()).collect(),
        )
    }

    /// Weyl algebra over the given base variables; the partial acting on a
    /// variable `v` is named `Dv`.
    pub fn weyl(names: &[&str]) -> Self {
        let mut all: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        all.extend(names.iter().map(|s| format!("D{s}")));
        Self::new(RingKind::Weyl, all)
    }

    /// Weyl algebra with explicit partial names.
    pub fn weyl_with_partials(base: &[&str], partials: &[&str]) -> Self {
        assert_eq!(base.len(), partials.len());
        let mut all: Vec<String> = base.iter().map(|s| s.to_string()).collect();
        all.extend(partials.iter().map(|s| s.to_string()));
        Self::new(RingKind::Weyl, all)
    }

    pub fn kind(&self) -> RingKind {
        self.0.kind
    }

    pub fn is_weyl(&self) -> bool {
        self.0.kind == RingKind::Weyl
    }

    /// Number of base variables `d`.
    pub fn dim(&self) -> usize {
        self.0.dim
    }

    /// Number of generators: `d` for commutative rings, `2d` for Weyl.
    pub fn ngens(&self) -> usize {
        self.0.names.len()
    }

    /// Name of generator `i` (base variables first, then partials).
    pub fn gen_name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn gen_names(&self) -> &[String] {
        &self.0.names
    }

    /// Index of a generator by name.
    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// True if generator `i` is a partial derivation.
    pub fn is_partial(&self, i: usize) -> bool {
        self.is_weyl() && i >= self.0.dim
    }

    /// The commutative subring on the base variables (self for commutative).
    pub fn base_ring(&self) -> RingSpec {
        match self.0.kind {
            RingKind::Commutative => self.clone(),
            RingKind::Weyl => Self::new(
                RingKind::Commutative,
                self.0.names[..self.0.dim].to_vec(),
            ),
        }
    }
}

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind && self.0.names == other.0.names)
    }
}

impl Eq for RingSpec {}

impl fmt::Debug for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingSpec({:?}, {:?})", self.0.kind, self.0.names)
    }
}

/// Image of a ring generator under a coefficient-level substitution:
/// either a generator of the target ring or a rational constant.
#[derive(Debug, Clone)]
pub enum GenImage {
    Gen(usize),
    Const(crate::Rational),
}

/// Exponent word `x^a ∂^b` in normal order. Stores one exponent per ring
/// generator; commutative rings simply have no partial block.
///
/// The `Ord` implementation is graded reverse lexicographic over the full
/// exponent vector, which is the term order used everywhere in this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(ngens: usize) -> Self {
        Monomial {
            exps: vec![0; ngens].into_boxed_slice(),
        }
    }

    /// Single generator `i` to the first power.
    pub fn gen(ngens: usize, i: usize) -> Self {
        let mut exps = vec![0; ngens];
        exps[i] = 1;
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn ngens(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// Componentwise product of exponent vectors. For Weyl monomials this is
    /// the leading monomial of the ring product, not the product itself.
    pub fn exp_mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial::from_exps(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial::from_exps(exps))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(
            self.exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True if no generator appears in both monomials.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic: higher total degree wins; on equal
    /// degree the monomial with the *smaller* exponent at the last differing
    /// position is the larger one.
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            match a.cmp(b) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_examples() {
        // In k[x,y]: x^2 > xy > y^2 > x > y > 1.
        let m = |a, b| Monomial::from_exps(vec![a, b]);
        assert!(m(2, 0) > m(1, 1));
        assert!(m(1, 1) > m(0, 2));
        assert!(m(0, 2) > m(1, 0));
        assert!(m(1, 0) > m(0, 1));
        assert!(m(0, 1) > m(0, 0));
    }

    #[test]
    fn grevlex_is_multiplicative_and_well_founded() {
        let m = |a, b, c| Monomial::from_exps(vec![a, b, c]);
        let one = Monomial::one(3);
        let pairs = [
            (m(1, 0, 2), m(0, 3, 0)),
            (m(2, 2, 0), m(1, 1, 1)),
            (m(0, 0, 1), m(0, 1, 0)),
        ];
        for (a, b) in &pairs {
            let ord = a.cmp(b);
            for f in [m(1, 0, 0), m(0, 2, 1)] {
                assert_eq!(a.exp_mul(&f).cmp(&b.exp_mul(&f)), ord);
            }
            assert!(*a >= one && *b >= one);
        }
    }

    #[test]
    fn ring_spec_basics() {
        let r = RingSpec::weyl(&["x", "y"]);
        assert_eq!(r.dim(), 2);
        assert_eq!(r.ngens(), 4);
        assert_eq!(r.gen_name(2), "Dx");
        assert_eq!(r.gen_index("Dy"), Some(3));
        assert!(r.is_partial(3));
        assert!(!r.is_partial(1));
        let b = r.base_ring();
        assert_eq!(b.ngens(), 2);
        assert_eq!(b.kind(), RingKind::Commutative);
    }

    #[test]
    #[should_panic(expected = "duplicate generator name")]
    fn duplicate_names_rejected() {
        RingSpec::commutative(&["x", "x"]);
    }

    #[test]
    fn monomial_division() {
        let a = Monomial::from_exps(vec![2, 1]);
        let b = Monomial::from_exps(vec![1, 0]);
        assert_eq!(a.checked_div(&b), Some(Monomial::from_exps(vec![1, 1])));
        assert_eq!(b.checked_div(&a), None);
        assert_eq!(a.lcm(&b), a);
        assert!(!a.is_coprime(&b));
        assert!(b.is_coprime(&Monomial::from_exps(vec![0, 3])));
    }
}
