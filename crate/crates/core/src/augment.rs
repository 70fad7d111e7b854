//! Augmentations of the framed cord algebra.
//!
//! An augmentation is stored as the scalars `mu = eps(mu)`, `lambda =
//! eps(lambda)` and the N x N matrix `R` with `R[i][j] = eps([g_i g_j^-1])`
//! over the conjugator words of a Wirtinger presentation. Values on
//! arbitrary group words are recovered through the ambient meridian
//! matrices `M_t = I - R_t e_t^T`, which act on columns by
//! `M_t v = v - v[t] R_t`; the infinite generating set of the cord algebra
//! is never materialized.

use std::sync::Arc;

use thiserror::Error;

use crate::diagram::WirtingerPresentation;
use crate::exactalg::{rank_one_update, Field, Matrix, Scalar};
use crate::reps::{classify_meridian, classify_rep, MeridianClass, RepClass, Representation};
use crate::sheaf::{is_simple, pushforward, SheafData};
use crate::words::GroupWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AugmentError {
    #[error("eps(mu) must be nonzero")]
    ZeroMu,
    #[error("eps(lambda) must be nonzero")]
    ZeroLambda,
    #[error("R must be N x N over the field of mu and lambda")]
    BadShape,
    #[error("sheaf data is not simple")]
    NotSimple,
    #[error("representation is not KCH")]
    NotKch,
    #[error("augmentation fails verification: {0}")]
    Verify(VerifyFailure),
}

/// First failed verification condition, for diagnostics.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum VerifyFailure {
    #[error("diagonal entry {index} differs from 1 - mu")]
    Diagonal { index: usize },
    #[error("Wirtinger relation {relation} fails on column {column} of R")]
    Relation { relation: usize, column: usize },
    #[error("conjugator column condition fails at generator {generator}")]
    Conjugator { generator: usize },
    #[error("longitude does not act on the first column by lambda")]
    Longitude,
}

/// An augmentation presented by `(mu, lambda, R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    presentation: Arc<WirtingerPresentation>,
    mu: Scalar,
    lambda: Scalar,
    r: Matrix,
}

impl Augmentation {
    /// Structural construction; use [`Augmentation::verify`] to check the
    /// cord-algebra conditions.
    pub fn new(
        presentation: Arc<WirtingerPresentation>,
        mu: Scalar,
        lambda: Scalar,
        r: Matrix,
    ) -> Result<Augmentation, AugmentError> {
        if mu.is_zero() {
            return Err(AugmentError::ZeroMu);
        }
        if lambda.is_zero() {
            return Err(AugmentError::ZeroLambda);
        }
        let n = presentation.n_generators;
        if r.rows() != n || r.cols() != n || r.field() != mu.field() || lambda.field() != mu.field()
        {
            return Err(AugmentError::BadShape);
        }
        Ok(Augmentation {
            presentation,
            mu,
            lambda,
            r,
        })
    }

    /// Construction plus full verification.
    pub fn verified(
        presentation: Arc<WirtingerPresentation>,
        mu: Scalar,
        lambda: Scalar,
        r: Matrix,
    ) -> Result<Augmentation, AugmentError> {
        let aug = Augmentation::new(presentation, mu, lambda, r)?;
        aug.verify().map_err(AugmentError::Verify)?;
        Ok(aug)
    }

    pub fn presentation(&self) -> &Arc<WirtingerPresentation> {
        &self.presentation
    }

    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn r(&self) -> &Matrix {
        &self.r
    }

    pub fn field(&self) -> Field {
        self.mu.field()
    }

    fn generator_count(&self) -> usize {
        self.presentation.n_generators
    }

    /// The ambient meridian matrix `M_t = I - R_t e_t^T` (1-based `t`),
    /// which realizes the meridian action on columns of `R`.
    pub fn ambient_matrix(&self, t: usize) -> Matrix {
        rank_one_update(t - 1, &self.r.col(t - 1))
    }

    /// Explicit inverse `I + mu^{-1} R_t e_t^T`.
    pub fn ambient_matrix_inverse(&self, t: usize) -> Matrix {
        let n = self.generator_count();
        let field = self.field();
        let mu_inv = self.mu.inv().expect("mu is nonzero");
        let col = self.r.col(t - 1);
        let mut m = Matrix::identity(field, n);
        for i in 0..n {
            m[(i, t - 1)] = m[(i, t - 1)].add(&mu_inv.mul(&col[i]));
        }
        m
    }

    /// Applies the ordered product of ambient matrices along `w` to a
    /// column vector, one rank-one update per letter.
    fn apply_word(&self, w: &GroupWord, v: &[Scalar]) -> Vec<Scalar> {
        let mu_inv = self.mu.inv().expect("mu is nonzero");
        let mut v = v.to_vec();
        for l in w.letters().iter().rev() {
            let t = l.gen - 1;
            let coeff = if l.exp == 1 {
                v[t].neg()
            } else {
                mu_inv.mul(&v[t])
            };
            if coeff.is_zero() {
                continue;
            }
            for (i, vi) in v.iter_mut().enumerate() {
                let delta = coeff.mul(&self.r[(i, t)]);
                *vi = vi.add(&delta);
            }
        }
        v
    }

    /// Value of the augmentation on the cord `[w]`: the first coordinate of
    /// the ambient word action applied to the first column of `R`.
    pub fn evaluate(&self, w: &GroupWord) -> Scalar {
        assert!(
            w.max_generator() <= self.generator_count(),
            "word uses a generator outside the presentation"
        );
        let v = self.apply_word(w, &self.r.col(0));
        v[0].clone()
    }

    /// Checks the defining conditions: the diagonal normalization, the
    /// Wirtinger relations on the column span of `R`, the conjugator column
    /// identities, and the longitude eigenvector condition. When `R = 0`
    /// the longitude condition is vacuous and `mu` must be 1 (enforced by
    /// the diagonal).
    pub fn verify(&self) -> Result<(), VerifyFailure> {
        let n = self.generator_count();
        let one_minus_mu = self.field().one().sub(&self.mu);
        for i in 0..n {
            if self.r[(i, i)] != one_minus_mu {
                return Err(VerifyFailure::Diagonal { index: i });
            }
        }
        for (ri, rel) in self.presentation.relations.iter().enumerate() {
            for j in 0..n {
                let col = self.r.col(j);
                if self.apply_word(&rel.lhs, &col) != self.apply_word(&rel.rhs, &col) {
                    return Err(VerifyFailure::Relation {
                        relation: ri,
                        column: j,
                    });
                }
            }
        }
        let r1 = self.r.col(0);
        for t in 1..=n {
            let g_inv = self.presentation.conjugators[t - 1].invert();
            if self.apply_word(&g_inv, &r1) != self.r.col(t - 1) {
                return Err(VerifyFailure::Conjugator { generator: t });
            }
        }
        let moved = self.apply_word(&self.presentation.longitude, &r1);
        let expected: Vec<Scalar> = r1.iter().map(|x| self.lambda.mul(x)).collect();
        if moved != expected {
            return Err(VerifyFailure::Longitude);
        }
        Ok(())
    }

    /// Row of the correspondence between augmentations and simple sheaves.
    pub fn degenerate_profile(&self) -> Profile {
        if !self.mu.is_one() {
            return Profile::NonvanishingE;
        }
        let n = self.generator_count();
        let edge_zero = (0..n).all(|j| self.r[(0, j)].is_zero() && self.r[(j, 0)].is_zero());
        if edge_zero {
            assert!(
                self.r.is_zero(),
                "vanishing first row and column force R = 0 for verified augmentations"
            );
            Profile::AllCordsVanish
        } else {
            Profile::UnipotentProfile
        }
    }

    /// Canonical lift to a knot-group representation on the column span of
    /// `R`, in the pivot basis with the first column leading when nonzero.
    pub fn lift(&self) -> Representation {
        let order: Vec<usize> = (0..self.generator_count()).collect();
        self.lift_in_basis(&order, true)
    }

    /// Lift with an explicit column preference order and without the
    /// canonical echelon completion; different orders give isomorphic
    /// representations.
    pub fn lift_with_column_order(&self, order: &[usize]) -> Representation {
        self.lift_in_basis(order, false)
    }

    fn lift_in_basis(&self, order: &[usize], canonical: bool) -> Representation {
        let field = self.field();
        let n = self.generator_count();
        let mut candidates: Vec<Vec<Scalar>> = Vec::new();
        if canonical {
            let r1 = self.r.col(0);
            if r1.iter().any(|x| !x.is_zero()) {
                candidates.push(r1);
            }
            let echelon = self.r.column_space_basis();
            for j in 0..echelon.cols() {
                candidates.push(echelon.col(j));
            }
        } else {
            for &j in order {
                candidates.push(self.r.col(j));
            }
        }

        let mut basis_cols: Vec<Vec<Scalar>> = Vec::new();
        let mut span = Matrix::zeros(field, n, 0);
        for cand in candidates {
            let grown = span.hstack(&Matrix::from_cols(field, n, std::slice::from_ref(&cand)));
            if grown.rank() > span.rank() {
                basis_cols.push(cand);
                span = grown;
            }
        }
        let basis = Matrix::from_cols(field, n, &basis_cols);
        let images = (1..=n)
            .map(|t| {
                let mapped = self.ambient_matrix(t).mul(&basis);
                basis
                    .solve_matrix(&mapped)
                    .expect("column span is invariant under the meridian action")
            })
            .collect();
        Representation::new(self.presentation.clone(), images)
            .expect("restricted meridian actions are invertible")
    }
}

/// Theorem-of-correspondence rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// `eps([e]) != 0`, equivalently `mu != 1`: lifts to an irreducible
    /// KCH representation.
    NonvanishingE,
    /// `eps([e]) = 0` with some nonvanishing cord: lifts to an irreducible
    /// unipotent KCH representation.
    UnipotentProfile,
    /// Every cord vanishes (`R = 0`): the zero representation; only
    /// `lambda` carries information.
    AllCordsVanish,
}

impl Profile {
    pub fn tag(&self) -> &'static str {
        match self {
            Profile::NonvanishingE => "NonvanishingE",
            Profile::UnipotentProfile => "UnipotentProfile",
            Profile::AllCordsVanish => "AllCordsVanish",
        }
    }
}

/// The augmentation attached to a simple sheaf by the trace formulas
/// `eps(lambda) = tr rho(l) - tr A`, `eps(mu) = tr rho(m) - dim V + 1`,
/// `eps([w]) = tr(rho(w) - rho(m w))`.
pub fn from_sheaf(s: &SheafData) -> Result<Augmentation, AugmentError> {
    if !is_simple(s) {
        return Err(AugmentError::NotSimple);
    }
    let rep = s.complement_rep();
    let field = rep.field();
    let n_gens = rep.presentation().n_generators;
    let dim_v = field.from_i64(rep.dim() as i64);

    let mu = rep.image(1).trace().sub(&dim_v).add(&field.one());
    let rho_l = rep.evaluate(&rep.presentation().longitude);
    let lambda = rho_l.trace().sub(&s.knot_monodromy().trace());

    let id = Matrix::identity(field, rep.dim());
    let m = id.sub(rep.image(1));
    let g_mats: Vec<Matrix> = rep
        .presentation()
        .conjugators
        .iter()
        .map(|g| rep.evaluate(g))
        .collect();
    let g_invs: Vec<Matrix> = g_mats
        .iter()
        .map(|g| g.inverse().expect("group images are invertible"))
        .collect();
    let r = Matrix::from_fn(field, n_gens, n_gens, |i, j| {
        m.mul(&g_mats[i]).mul(&g_invs[j]).trace()
    });

    let aug = Augmentation::new(rep.presentation().clone(), mu, lambda, r)?;
    assert!(
        aug.verify().is_ok(),
        "trace augmentation of a simple sheaf must verify"
    );
    Ok(aug)
}

/// The classical augmentation of a KCH representation, computed in the
/// meridian normal basis: `eps(mu) = mu0`, `eps(lambda) = lambda0`,
/// `eps([w]) = (1 - mu0) * w_norm[0][0]`. Always equal to the trace
/// augmentation of the pushforward sheaf (asserted).
pub fn from_kch_rep(rep: &Representation) -> Result<Augmentation, AugmentError> {
    let RepClass::Kch { .. } = classify_rep(rep) else {
        return Err(AugmentError::NotKch);
    };
    let MeridianClass::Kch { mu0, basis_change } =
        classify_meridian(rep.image(1)).expect("images are invertible")
    else {
        unreachable!("classify_rep already certified the KCH shape");
    };
    let field = rep.field();
    let n_gens = rep.presentation().n_generators;
    let normalized = rep.conjugate(&basis_change);
    let lambda0 = normalized.evaluate(&rep.presentation().longitude)[(0, 0)].clone();

    let one_minus_mu0 = field.one().sub(&mu0);
    let g_mats: Vec<Matrix> = rep
        .presentation()
        .conjugators
        .iter()
        .map(|g| normalized.evaluate(g))
        .collect();
    let g_invs: Vec<Matrix> = g_mats
        .iter()
        .map(|g| g.inverse().expect("group images are invertible"))
        .collect();
    let r = Matrix::from_fn(field, n_gens, n_gens, |i, j| {
        one_minus_mu0.mul(&g_mats[i].mul(&g_invs[j])[(0, 0)])
    });

    let aug = Augmentation::new(rep.presentation().clone(), mu0, lambda0, r)?;
    let via_sheaf = from_sheaf(&pushforward(rep))?;
    assert_eq!(
        aug, via_sheaf,
        "the KCH augmentation must factor through the pushforward sheaf"
    );
    Ok(aug)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::KnotRef;
    use crate::reps::{are_isomorphic, Iso};
    use crate::sheaf::skyscraper;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn trefoil_pres() -> Arc<WirtingerPresentation> {
        KnotRef::named("trefoil").presentation().unwrap()
    }

    fn unknot_pres() -> Arc<WirtingerPresentation> {
        KnotRef::named("unknot").presentation().unwrap()
    }

    fn trefoil_example(field: Field) -> Representation {
        let images = vec![
            Matrix::from_i64_rows(field, &[&[1, 1], &[0, 1]]),
            Matrix::from_i64_rows(field, &[&[1, 0], &[-1, 1]]),
            Matrix::from_i64_rows(field, &[&[2, 1], &[-1, 0]]),
        ];
        Representation::new(trefoil_pres(), images).unwrap()
    }

    fn trefoil_unipotent_aug() -> Augmentation {
        from_sheaf(&pushforward(&trefoil_example(Field::Rational))).unwrap()
    }

    #[test]
    fn unknot_augmentations_verify() {
        let f = Field::Rational;
        let pres = unknot_pres();
        // mu != 1 forces lambda = 1
        let mu = f.from_i64(3);
        let r = Matrix::new(f, 1, 1, vec![f.one().sub(&mu)]);
        let aug = Augmentation::verified(pres.clone(), mu, f.one(), r).unwrap();
        assert_eq!(aug.degenerate_profile(), Profile::NonvanishingE);

        // mu = 1 leaves lambda free
        let r0 = Matrix::zeros(f, 1, 1);
        for lam in [1i64, -2, 7] {
            let aug =
                Augmentation::verified(pres.clone(), f.one(), f.from_i64(lam), r0.clone()).unwrap();
            assert_eq!(aug.degenerate_profile(), Profile::AllCordsVanish);
        }

        // mu != 1 with lambda != 1 fails the longitude condition
        let mu = f.from_i64(3);
        let r = Matrix::new(f, 1, 1, vec![f.one().sub(&mu)]);
        let aug = Augmentation::new(pres, mu, f.from_i64(2), r).unwrap();
        assert_eq!(aug.verify(), Err(VerifyFailure::Longitude));
    }

    #[test]
    fn trefoil_zero_offdiagonal_fails_conjugators() {
        let f = Field::prime(3).unwrap();
        let pres = trefoil_pres();
        let mu = f.from_i64(2);
        let mut r = Matrix::zeros(f, 3, 3);
        for i in 0..3 {
            r[(i, i)] = f.one().sub(&mu);
        }
        let aug = Augmentation::new(pres, mu, f.one(), r).unwrap();
        assert!(matches!(
            aug.verify(),
            Err(VerifyFailure::Conjugator { .. }) | Err(VerifyFailure::Relation { .. })
        ));
    }

    #[test]
    fn evaluate_basic_values() {
        let aug = trefoil_unipotent_aug();
        let f = Field::Rational;
        assert_eq!(aug.mu(), &f.one());
        assert_eq!(aug.lambda(), &f.from_i64(-1));
        // eps([e]) = 1 - mu
        assert_eq!(aug.evaluate(&GroupWord::identity()), f.zero());
        // eps([m2]) computed by the trace oracle: tr((I - rho(m1)) rho(m2))
        assert_eq!(aug.evaluate(&"m2".parse().unwrap()), f.one());
        // eps([m1]) = mu (1 - mu)
        assert_eq!(aug.evaluate(&"m1".parse().unwrap()), f.zero());
    }

    #[test]
    fn evaluate_meridian_relation_generic_mu() {
        let f = Field::Rational;
        let pres = unknot_pres();
        let mu = f.from_i64(4);
        let r = Matrix::new(f, 1, 1, vec![f.one().sub(&mu)]);
        let aug = Augmentation::verified(pres, mu.clone(), f.one(), r).unwrap();
        let e = aug.evaluate(&GroupWord::identity());
        assert_eq!(e, f.one().sub(&mu));
        assert_eq!(aug.evaluate(&"m1".parse().unwrap()), mu.mul(&e));
    }

    #[test]
    fn ambient_matrices_invert_and_have_det_mu() {
        let aug = trefoil_unipotent_aug();
        for t in 1..=3 {
            let m = aug.ambient_matrix(t);
            let m_inv = aug.ambient_matrix_inverse(t);
            assert!(m.mul(&m_inv).is_identity());
            assert_eq!(m.det(), *aug.mu());
        }
    }

    #[test]
    fn from_sheaf_skyscraper() {
        let f = Field::Rational;
        let alpha = f.from_i64(2);
        let s = skyscraper(trefoil_pres(), &alpha).unwrap();
        let aug = from_sheaf(&s).unwrap();
        assert_eq!(aug.mu(), &f.one());
        assert_eq!(aug.lambda(), &alpha.neg());
        assert!(aug.r().is_zero());
        assert_eq!(aug.degenerate_profile(), Profile::AllCordsVanish);
    }

    #[test]
    fn from_sheaf_abelian_matches_linking_powers() {
        let f = Field::Rational;
        let mu0 = f.from_i64(3);
        let rep = Representation::new(
            trefoil_pres(),
            vec![Matrix::new(f, 1, 1, vec![mu0.clone()]); 3],
        )
        .unwrap();
        let aug = from_sheaf(&pushforward(&rep)).unwrap();
        assert_eq!(aug.lambda(), &f.one());
        assert_eq!(aug.mu(), &mu0);
        let one_minus = f.one().sub(&mu0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let w = random_word(&mut rng, 3, 6);
            let expected = one_minus.mul(&mu0.pow(w.linking_number()));
            assert_eq!(aug.evaluate(&w), expected);
        }
    }

    #[test]
    fn from_sheaf_rejects_non_simple() {
        let f = Field::Rational;
        let rep = Representation::trivial(unknot_pres(), f, 1);
        let s = SheafData::new(rep, Matrix::identity(f, 1), Matrix::identity(f, 1)).unwrap();
        assert_eq!(from_sheaf(&s), Err(AugmentError::NotSimple));
    }

    #[test]
    fn from_kch_rep_matches_sheaf_route_and_is_conjugation_invariant() {
        let f = Field::prime(5).unwrap();
        let mu0 = f.from_i64(3);
        let rep =
            Representation::new(trefoil_pres(), vec![Matrix::new(f, 1, 1, vec![mu0]); 3]).unwrap();
        let aug = from_kch_rep(&rep).unwrap();
        assert_eq!(aug, from_sheaf(&pushforward(&rep)).unwrap());

        // rank-2 reducible KCH: abelian plus trivial line, then conjugated
        let padded = rep.direct_sum(&Representation::trivial(trefoil_pres(), f, 1));
        let base = from_kch_rep(&padded).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let p = loop {
                let cand = Matrix::from_fn(f, 2, 2, |_, _| f.from_i64(rng.gen_range(0..5)));
                if cand.is_invertible() {
                    break cand;
                }
            };
            assert_eq!(from_kch_rep(&padded.conjugate(&p)).unwrap(), base);
        }
    }

    #[test]
    fn from_kch_rep_rejects_trivial_meridians() {
        let rep = Representation::trivial(trefoil_pres(), Field::Rational, 2);
        assert_eq!(from_kch_rep(&rep), Err(AugmentError::NotKch));
    }

    #[test]
    fn lift_examples() {
        let f = Field::Rational;
        // unknot with mu = mu0 != 1 lifts to the one-dimensional scalar rep
        let mu = f.from_i64(5);
        let r = Matrix::new(f, 1, 1, vec![f.one().sub(&mu)]);
        let aug = Augmentation::verified(unknot_pres(), mu.clone(), f.one(), r).unwrap();
        let lifted = aug.lift();
        assert_eq!(lifted.dim(), 1);
        assert_eq!(lifted.image(1)[(0, 0)], mu);

        // zero R lifts to the zero representation
        let aug0 = Augmentation::verified(
            unknot_pres(),
            f.one(),
            f.from_i64(2),
            Matrix::zeros(f, 1, 1),
        )
        .unwrap();
        assert_eq!(aug0.lift().dim(), 0);
    }

    #[test]
    fn lift_round_trip_recovers_trefoil_example() {
        let aug = trefoil_unipotent_aug();
        let lifted = aug.lift();
        assert_eq!(lifted.dim(), 2);
        assert!(lifted.check_relations());
        assert_eq!(
            classify_rep(&lifted),
            RepClass::UnipotentKch { irreducible: true }
        );
        assert_eq!(
            are_isomorphic(&lifted, &trefoil_example(Field::Rational)),
            Iso::Isomorphic
        );
        // and the augmentation survives the round trip exactly
        assert_eq!(from_sheaf(&pushforward(&lifted)).unwrap(), aug);
    }

    #[test]
    fn degenerate_profiles() {
        let f = Field::Rational;
        let mu = f.from_i64(3);
        let r = Matrix::new(f, 1, 1, vec![f.one().sub(&mu)]);
        let aug = Augmentation::verified(unknot_pres(), mu, f.one(), r).unwrap();
        assert_eq!(aug.degenerate_profile(), Profile::NonvanishingE);
        assert_eq!(
            trefoil_unipotent_aug().degenerate_profile(),
            Profile::UnipotentProfile
        );
    }

    pub(crate) fn random_word(rng: &mut ChaCha8Rng, n_gens: usize, max_len: usize) -> GroupWord {
        let len = rng.gen_range(0..=max_len);
        let letters = (0..len).map(|_| {
            crate::words::Letter::new(
                rng.gen_range(1..=n_gens),
                if rng.gen_bool(0.5) { 1 } else { -1 },
            )
        });
        GroupWord::from_letters(letters)
    }

    #[test]
    fn relation_suite_on_random_words() {
        let aug = trefoil_unipotent_aug();
        let f = Field::Rational;
        let m1 = GroupWord::generator(1);
        let l = aug.presentation().longitude.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let g1 = random_word(&mut rng, 3, 6);
            let g2 = random_word(&mut rng, 3, 6);
            // normalization
            assert_eq!(aug.evaluate(&GroupWord::identity()), f.one().sub(aug.mu()));
            // meridian
            assert_eq!(
                aug.evaluate(&m1.concat(&g1)),
                aug.mu().mul(&aug.evaluate(&g1))
            );
            assert_eq!(
                aug.evaluate(&g1.concat(&m1)),
                aug.mu().mul(&aug.evaluate(&g1))
            );
            // longitude
            assert_eq!(
                aug.evaluate(&l.concat(&g1)),
                aug.lambda().mul(&aug.evaluate(&g1))
            );
            assert_eq!(
                aug.evaluate(&g1.concat(&l)),
                aug.lambda().mul(&aug.evaluate(&g1))
            );
            // skein
            let lhs = aug
                .evaluate(&g1.concat(&g2))
                .sub(&aug.evaluate(&g1.concat(&m1).concat(&g2)));
            assert_eq!(lhs, aug.evaluate(&g1).mul(&aug.evaluate(&g2)));
        }
    }
}
