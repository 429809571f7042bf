//! Parametrizations of solution sets of operator equations.
//!
//! Three constructions: the nullspace parametrization with its
//! controllability test, the boundary-ideal parametrization (a row of ideal
//! generators, block-diagonal for several functions), and the intersection
//! of two parametrizations through a common right nullspace.

use std::fmt;

use crate::algebra::{OperatorMatrix, OrePoly};
use crate::groebner::{reduce_matrix, right_nullspace, syzygy_module};

/// Output of [`parametrize`]: `B` with `A·B = 0`, the left nullspace
/// `A'` of `B`, and the controllability verdict. `witness` holds the rows
/// of `A'` that do not reduce to zero modulo the rows of `A`; it is empty
/// exactly when the system is controllable and `B` is a parametrization.
#[derive(Debug, Clone)]
pub struct ParametrizationResult {
    pub matrix: OperatorMatrix,
    pub b: OperatorMatrix,
    pub aprime: OperatorMatrix,
    pub controllable: bool,
    pub witness: OperatorMatrix,
}

/// Output of [`intersect`]: the stacked right nullspace `C = [C₁; C₂]` of
/// `[B₁ B₂]`, the parametrization `P = B₁·C₁` of the intersection of the
/// images (with zero columns dropped and columns sign/content normalized),
/// and any relations satisfied by the left nullspace of `C` beyond the row
/// module of `[B₁ B₂]`.
#[derive(Debug, Clone)]
pub struct IntersectionResult {
    pub c: OperatorMatrix,
    pub c1: OperatorMatrix,
    pub c2: OperatorMatrix,
    /// `B₁·C₁`, column-normalized.
    pub p: OperatorMatrix,
    /// `B₁·C₁` exactly as computed (equal to `−B₂·C₂`).
    pub p_raw: OperatorMatrix,
    pub extra_relations: OperatorMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParametrizeError {
    RowMismatch { left: usize, right: usize },
    RingMismatch,
    /// `B₁C₁ = −B₂C₂` failed, which would mean the nullspace is wrong.
    NullspaceInconsistent,
    /// A boundary generator contains a partial derivation.
    BoundaryGeneratorNotPolynomial { function: usize, entry: String },
}

impl fmt::Display for ParametrizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParametrizeError::RowMismatch { left, right } => {
                write!(f, "row count mismatch: {left} vs {right}")
            }
            ParametrizeError::RingMismatch => write!(f, "matrices live in different rings"),
            ParametrizeError::NullspaceInconsistent => {
                write!(f, "internal error: B1*C1 != -B2*C2; the nullspace is inconsistent")
            }
            ParametrizeError::BoundaryGeneratorNotPolynomial { function, entry } => write!(
                f,
                "boundary generator `{entry}` for function {function} contains a partial derivation"
            ),
        }
    }
}

impl std::error::Error for ParametrizeError {}

/// Compute the candidate parametrization of `sol(A)`: `B` is the right
/// nullspace of `A` and `A'` the left nullspace of `B`. The solution set is
/// parametrizable (controllable) iff `A` and `A'` generate the same row
/// module; since `A ⊆ A'` always holds here, it suffices that every row of
/// `A'` reduces to zero against the rows of `A`.
pub fn parametrize(a: &OperatorMatrix) -> ParametrizationResult {
    let b = right_nullspace(a);
    let aprime = syzygy_module(&b);
    let witness = reduce_matrix(&aprime, a);
    let controllable = witness.rows() == 0;
    ParametrizationResult {
        matrix: a.clone(),
        b,
        aprime,
        controllable,
        witness,
    }
}

/// Boundary-ideal parametrization. `assignments[i]` lists the generators of
/// the vanishing ideal for the `i`-th function; the result is the
/// block-diagonal matrix whose `i`-th diagonal block is the row of those
/// generators. For a single function this is just the row `[f₁ … f_ℓ'']`.
///
/// Generators must be polynomials in the base variables.
pub fn boundary_param(
    assignments: &[Vec<OrePoly>],
) -> Result<OperatorMatrix, ParametrizeError> {
    assert!(!assignments.is_empty(), "at least one function required");
    let ring = assignments
        .iter()
        .flat_map(|g| g.iter())
        .map(|p| p.ring().clone())
        .next()
        .expect("at least one generator required");
    let d = ring.dim();
    for (i, gens) in assignments.iter().enumerate() {
        for g in gens {
            let polynomial = g
                .terms()
                .all(|(m, _)| (d..ring.ngens()).all(|j| m.exp(j) == 0));
            if !polynomial {
                return Err(ParametrizeError::BoundaryGeneratorNotPolynomial {
                    function: i,
                    entry: g.to_string(),
                });
            }
        }
    }
    let ell = assignments.len();
    let total: usize = assignments.iter().map(|g| g.len()).sum();
    let mut m = OperatorMatrix::zero(&ring, ell, total);
    let mut col = 0;
    for (i, gens) in assignments.iter().enumerate() {
        for g in gens {
            *m.entry_mut(i, col) = g.clone();
            col += 1;
        }
    }
    Ok(m)
}

/// Intersect the images of two parametrizations with equal row counts:
/// `C = [C₁; C₂]` is the right nullspace of `[B₁ B₂]`, split at the column
/// count of `B₁`, and `P = B₁C₁ = −B₂C₂` parametrizes the intersection.
/// Rows of the left nullspace of `C` beyond the row module of `[B₁ B₂]`
/// are reported in `extra_relations` and left to the caller to accept.
pub fn intersect(
    b1: &OperatorMatrix,
    b2: &OperatorMatrix,
) -> Result<IntersectionResult, ParametrizeError> {
    if b1.ring() != b2.ring() {
        return Err(ParametrizeError::RingMismatch);
    }
    if b1.rows() != b2.rows() {
        return Err(ParametrizeError::RowMismatch {
            left: b1.rows(),
            right: b2.rows(),
        });
    }
    let b = b1.hconcat(b2);
    let c = right_nullspace(&b);
    let split = b1.cols();
    let c1 = c.row_slice(0, split);
    let c2 = c.row_slice(split, c.rows());
    let p_raw = b1 * &c1;
    let check = &(b2 * &c2);
    // B₁C₁ + B₂C₂ = 0 entrywise, exactly.
    let mut sum = p_raw.clone();
    for i in 0..sum.rows() {
        for j in 0..sum.cols() {
            *sum.entry_mut(i, j) = &*sum.entry(i, j) + check.entry(i, j);
        }
    }
    if !sum.is_zero() {
        return Err(ParametrizeError::NullspaceInconsistent);
    }
    let extra_relations = reduce_matrix(&syzygy_module(&c), &b);
    let p = p_raw.normalize_columns();
    Ok(IntersectionResult {
        c,
        c1,
        c2,
        p,
        p_raw,
        extra_relations,
    })
}

/// Report of [`verify_parametrization`].
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub ab_zero: bool,
    /// Rows of `A` not contained in the row module of `A' = syz(B)`.
    pub residues_a_in_aprime: OperatorMatrix,
    /// Rows of `A'` not contained in the row module of `A`.
    pub residues_aprime_in_a: OperatorMatrix,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.ab_zero
            && self.residues_a_in_aprime.rows() == 0
            && self.residues_aprime_in_a.rows() == 0
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("A*B == 0: {}\n", self.ab_zero));
        s.push_str(&format!(
            "rows of A outside <A'>: {}\n{}\n",
            self.residues_a_in_aprime.rows(),
            self.residues_a_in_aprime.to_text()
        ));
        s.push_str(&format!(
            "rows of A' outside <A>: {}\n{}\n",
            self.residues_aprime_in_a.rows(),
            self.residues_aprime_in_a.to_text()
        ));
        s
    }
}

/// Check a claimed parametrization: `A·B = 0` and mutual row-module
/// containment of `A` and the left nullspace of `B`.
pub fn verify_parametrization(a: &OperatorMatrix, b: &OperatorMatrix) -> VerificationReport {
    let ab_zero = (a * b).is_zero();
    let aprime = syzygy_module(b);
    VerificationReport {
        ab_zero,
        residues_a_in_aprime: reduce_matrix(a, &aprime),
        residues_aprime_in_a: reduce_matrix(&aprime, a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_operator, RingSpec};
    use crate::groebner::row_module_equal;

    fn mat(ring: &RingSpec, rows: &[&[&str]]) -> OperatorMatrix {
        OperatorMatrix::from_rows(
            ring,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_operator(s, ring).unwrap())
                        .collect()
                })
                .collect(),
        )
    }

    fn weyl3() -> RingSpec {
        RingSpec::weyl(&["x", "y", "z"])
    }

    #[test]
    fn sphere_tangent_divergence_free() {
        // A = [x y z; ∂x ∂y ∂z] is parametrized by the single column
        // (−z∂y+y∂z, z∂x−x∂z, −y∂x+x∂y), up to sign.
        let r = weyl3();
        let a = mat(&r, &[&["x", "y", "z"], &["Dx", "Dy", "Dz"]]);
        let result = parametrize(&a);
        assert!(result.controllable);
        assert_eq!(result.witness.rows(), 0);
        assert!((&a * &result.b).is_zero());
        let paper_b = mat(&r, &[&["-1*z*Dy + y*Dz"], &["z*Dx - x*Dz"], &["-1*y*Dx + x*Dy"]]);
        // column-module equivalence via the involution
        assert!(row_module_equal(
            &result.b.involution(),
            &paper_b.involution()
        ));
        assert!(row_module_equal(&a, &result.aprime));
    }

    #[test]
    fn multiplication_by_x_is_not_controllable() {
        let r = RingSpec::commutative(&["x"]);
        let a = mat(&r, &[&["x"]]);
        let result = parametrize(&a);
        assert_eq!(result.b.cols(), 0);
        assert_eq!(result.aprime.rows(), 1);
        assert!(result.aprime.entry(0, 0).is_one());
        assert!(!result.controllable);
        assert_eq!(result.witness.rows(), 1);
    }

    #[test]
    fn zero_matrix_is_parametrized_by_identity() {
        let r = weyl3();
        let a = OperatorMatrix::zero(&r, 1, 3);
        let result = parametrize(&a);
        assert!(result.controllable);
        assert_eq!(result.b, OperatorMatrix::identity(&r, 3));
    }

    #[test]
    fn boundary_rows() {
        let r = RingSpec::weyl(&["x", "y"]);
        let dirichlet = vec![parse_operator("x*(x - 1)*y*(y - 1)", &r).unwrap()];
        let m = boundary_param(&[dirichlet]).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));

        let axis = vec![
            parse_operator("x", &r).unwrap(),
            parse_operator("y", &r).unwrap(),
        ];
        let m = boundary_param(&[axis]).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
        assert_eq!(*m.entry(0, 0), parse_operator("x", &r).unwrap());

        let deriv = vec![parse_operator("x^2", &r).unwrap()];
        let m = boundary_param(&[deriv]).unwrap();
        assert_eq!(*m.entry(0, 0), parse_operator("x^2", &r).unwrap());
    }

    #[test]
    fn boundary_block_diagonal() {
        let r = RingSpec::weyl(&["x", "y"]);
        let m = boundary_param(&[
            vec![parse_operator("x*(x - 1)", &r).unwrap()],
            vec![parse_operator("y*(y - 1)", &r).unwrap()],
        ])
        .unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert!(m.entry(0, 1).is_zero());
        assert!(m.entry(1, 0).is_zero());
    }

    #[test]
    fn boundary_rejects_partials() {
        let r = RingSpec::weyl(&["x", "y"]);
        let e = boundary_param(&[vec![parse_operator("x*Dx", &r).unwrap()]]).unwrap_err();
        assert!(matches!(
            e,
            ParametrizeError::BoundaryGeneratorNotPolynomial { function: 0, .. }
        ));
    }

    #[test]
    fn verify_identity_against_nonzero_matrix() {
        let r = weyl3();
        let a = mat(&r, &[&["x", "y", "z"]]);
        let report = verify_parametrization(&a, &OperatorMatrix::identity(&r, 3));
        assert!(!report.ab_zero);
        assert!(!report.all_pass());
    }

    #[test]
    fn verify_zero_matrix_passes() {
        let r = weyl3();
        let a = OperatorMatrix::zero(&r, 1, 2);
        let b = mat(&r, &[&["x"], &["Dy"]]);
        let report = verify_parametrization(&a, &b);
        assert!(report.ab_zero);
    }

    #[test]
    fn self_intersection_keeps_column_module() {
        let r = weyl3();
        let b = mat(&r, &[&["-1*z*Dy + y*Dz"], &["z*Dx - x*Dz"], &["-1*y*Dx + x*Dy"]]);
        let id = OperatorMatrix::identity(&r, 3);
        let res = intersect(&b, &id).unwrap();
        assert!(row_module_equal(&res.p.involution(), &b.involution()));
    }

    #[test]
    fn intersect_rejects_mismatched_rows() {
        let r = weyl3();
        let b1 = mat(&r, &[&["x"], &["y"]]);
        let b2 = mat(&r, &[&["z"]]);
        assert!(matches!(
            intersect(&b1, &b2),
            Err(ParametrizeError::RowMismatch { .. })
        ));
    }
}
