//! Property suites for the cross-module invariants: pushforward round
//! trips, moduli stability under local-system padding, figure-eight
//! presentation facts, and enumeration determinism.

mod common;
use common::*;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cordalg_core::{
    are_isomorphic, classify, classify_rep, enumerate, is_simple, moduli_canonical, pushforward,
    same_moduli_class, skyscraper, Augmentation, EnumerateOptions, Field, Iso, KnotRef, Profile,
    RepClass, Representation, SheafKind,
};

#[test]
fn pushforward_round_trip_on_random_kch_reps() {
    // >= 100 randomized relation-satisfying KCH/unipotent reps over F3 with
    // dim <= 3: the pushforward classifies back to its own representation
    let field = Field::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pool: Vec<Representation> = rep_pool(field)
        .into_iter()
        .filter(|r| {
            matches!(
                classify_rep(r),
                RepClass::Kch { .. } | RepClass::UnipotentKch { .. }
            )
        })
        .collect();
    assert!(!pool.is_empty());
    let mut checked = 0;
    let mut idx = 0;
    while checked < 110 {
        let base = &pool[idx % pool.len()];
        idx += 1;
        let p = random_invertible(&mut rng, field, base.dim());
        let rep = base.conjugate(&p);
        let s = pushforward(&rep);
        assert!(is_simple(&s), "pushforwards of KCH-type reps are simple");
        let class = classify(&s).unwrap();
        match &class.kind {
            SheafKind::KchPushforward { rep: cert }
            | SheafKind::UnipotentPushforward { rep: cert } => {
                assert_eq!(are_isomorphic(cert, &rep), Iso::Isomorphic);
            }
            other => panic!("pushforward classified as {}", other.tag()),
        }
        checked += 1;
    }
}

#[test]
fn moduli_canonical_is_idempotent_and_padding_stable() {
    let mut count = 0;
    for s in sheaf_corpus(80) {
        let canon = moduli_canonical(&s).unwrap();
        assert_eq!(moduli_canonical(&canon).unwrap(), canon, "idempotence");
        if s.complement_dim() < 3 && s.knot_dim() < 3 {
            let padded = pad_local(&s, 1);
            assert_eq!(
                moduli_canonical(&padded).unwrap(),
                canon,
                "local-system padding must not move the moduli class"
            );
            assert!(same_moduli_class(&s, &padded).unwrap());
        }
        count += 1;
    }
    assert_eq!(count, 80);
}

#[test]
fn moduli_canonical_lands_on_the_three_shapes() {
    for s in sheaf_corpus(60) {
        let canon = moduli_canonical(&s).unwrap();
        let class = classify(&canon).unwrap();
        match class.kind {
            SheafKind::KchPushforward { rep } | SheafKind::UnipotentPushforward { rep } => {
                // canonical pushforwards come from irreducible representations
                assert_eq!(classify_rep(&rep).irreducible(), Some(true));
            }
            SheafKind::Skyscraper { local_rank, .. } => assert_eq!(local_rank, 0),
            other => panic!("canonical form classified as {}", other.tag()),
        }
    }
}

#[test]
fn trefoil_relations_match_classical_presentation() {
    // solution-set equality over all two-dimensional assignments: the
    // diagram-derived relations and the classical m3 m2 = m2 m1 = m1 m3
    // cut out exactly the same representations
    for p in [2u32, 3] {
        let field = Field::prime(p).unwrap();
        let presentation = pres("trefoil");
        let singles = all_invertible_2x2(field);
        let mut derived = std::collections::BTreeSet::new();
        let mut classical = std::collections::BTreeSet::new();
        for (i1, m1) in singles.iter().enumerate() {
            for (i3, m3) in singles.iter().enumerate() {
                // derived relations force m2 = m3^{-1} m1 m3
                let m2 = m3.inverse().unwrap().mul(m1).mul(m3);
                let rep = Representation::new(
                    presentation.clone(),
                    vec![m1.clone(), m2.clone(), m3.clone()],
                )
                .unwrap();
                if rep.check_relations() {
                    derived.insert((i1, key_of(&m2), i3));
                }
                // classical relations on the same raw triple
                let a = m3.mul(&m2);
                let b = m2.mul(m1);
                let c = m1.mul(m3);
                if a == b && b == c {
                    classical.insert((i1, key_of(&m2), i3));
                }
            }
        }
        assert_eq!(derived, classical, "presentations differ at p = {p}");
        assert!(!derived.is_empty());
    }
}

fn all_invertible_2x2(field: Field) -> Vec<cordalg_core::Matrix> {
    let p = match field {
        Field::Prime(p) => i64::from(p),
        Field::Rational => unreachable!(),
    };
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = cordalg_core::Matrix::from_i64_rows(field, &[&[a, b], &[c, d]]);
                    if m.is_invertible() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn key_of(m: &cordalg_core::Matrix) -> String {
    format!("{m:?}")
}

#[test]
fn nontrivial_mu_forces_offdiagonal_structure() {
    // exhaustive at p = 3: every verified trefoil augmentation with
    // mu != 1 has a nonzero off-diagonal entry in R
    let knot = KnotRef::named("trefoil");
    let presentation = knot.presentation().unwrap();
    let e = enumerate(&knot, &presentation, 3, &EnumerateOptions::default()).unwrap();
    let mut saw_nontrivial_mu = false;
    for aug in &e.augmentations {
        if aug.mu().is_one() {
            continue;
        }
        saw_nontrivial_mu = true;
        let n = aug.presentation().n_generators;
        let off_diag_nonzero = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .any(|(i, j)| i != j && !aug.r()[(i, j)].is_zero());
        assert!(off_diag_nonzero);
    }
    assert!(saw_nontrivial_mu);
}

#[test]
fn figure_eight_conjugators_and_longitude() {
    // sample representations: an abelian line over Q and every lift from
    // the p = 3 enumeration
    let knot = KnotRef::named("figure-eight");
    let presentation = knot.presentation().unwrap();
    let f = Field::Rational;
    let abelian = Representation::new(
        presentation.clone(),
        vec![cordalg_core::Matrix::new(f, 1, 1, vec![f.from_i64(7)]); 4],
    )
    .unwrap();
    let e = enumerate(&knot, &presentation, 3, &EnumerateOptions::default()).unwrap();
    let mut reps: Vec<Representation> = vec![abelian];
    reps.extend(e.augmentations.iter().map(Augmentation::lift));

    for rep in &reps {
        assert!(rep.check_relations());
        for (t, g) in presentation.conjugators.iter().enumerate() {
            let gm = rep.evaluate(g);
            let conjugated = gm.inverse().unwrap().mul(rep.image(1)).mul(&gm);
            assert_eq!(&conjugated, rep.image(t + 1));
        }
        let l = rep.evaluate(&presentation.longitude);
        assert_eq!(l.mul(rep.image(1)), rep.image(1).mul(&l));
    }
}

#[test]
fn figure_eight_universal_locus_and_lifts() {
    let knot = KnotRef::named("figure-eight");
    let presentation = knot.presentation().unwrap();
    let e = enumerate(&knot, &presentation, 3, &EnumerateOptions::default()).unwrap();
    assert!(cordalg_core::universal_locus_check(&e.report));
    for aug in &e.augmentations {
        assert!(aug.verify().is_ok());
        let lift = aug.lift();
        match aug.degenerate_profile() {
            Profile::NonvanishingE => {
                assert!(matches!(
                    classify_rep(&lift),
                    RepClass::Kch {
                        irreducible: true,
                        ..
                    }
                ));
            }
            Profile::UnipotentProfile => {
                assert_eq!(
                    classify_rep(&lift),
                    RepClass::UnipotentKch { irreducible: true }
                );
            }
            Profile::AllCordsVanish => assert_eq!(lift.dim(), 0),
        }
    }
}

#[test]
fn enumeration_reports_serialize_deterministically() {
    let knot = KnotRef::named("trefoil");
    let presentation = knot.presentation().unwrap();
    let opts = EnumerateOptions::default();
    let a = enumerate(&knot, &presentation, 3, &opts).unwrap();
    let b = enumerate(
        &knot,
        &presentation,
        3,
        &EnumerateOptions { threads: 3, ..opts },
    )
    .unwrap();
    let ja = serde_json::to_string(&a.report.without_wall_time()).unwrap();
    let jb = serde_json::to_string(&b.report.without_wall_time()).unwrap();
    assert_eq!(ja, jb, "reports must be byte-identical modulo wall time");

    // and the report JSON round-trips
    let back: cordalg_core::EnumerationReport = serde_json::from_str(&ja).unwrap();
    assert_eq!(back, a.report.without_wall_time());
}

#[test]
fn moduli_pushforward_lift_fixes_canonical_representatives() {
    // on canonical pushforward representatives the composite
    // moduli_canonical . pushforward . lift . from_sheaf is the identity
    // on the moduli set, i.e. up to isomorphism of the representatives
    let field = Field::prime(3).unwrap();
    let opts = cordalg_core::IsoOptions::default();
    for rep in rep_pool(field) {
        let defect = rep.meridian_defect();
        let core = rep.restrict(&defect).unwrap();
        if classify_rep(&core).irreducible() != Some(true) {
            continue;
        }
        let canonical = pushforward(&core);
        let aug = cordalg_core::from_sheaf(&canonical).unwrap();
        let again = moduli_canonical(&pushforward(&aug.lift())).unwrap();
        let base = moduli_canonical(&canonical).unwrap();
        assert_eq!(
            classify(&base).unwrap().kind.tag(),
            classify(&again).unwrap().kind.tag()
        );
        assert_eq!(
            cordalg_core::sheaves_isomorphic(&base, &again, &opts),
            Iso::Isomorphic
        );
        // and the augmentation itself is literally fixed
        assert_eq!(cordalg_core::from_sheaf(&again).unwrap(), aug);
    }
}

#[test]
fn skyscraper_recovers_all_cords_vanish_augmentations() {
    // the third correspondence row: mu = 1, R = 0, lambda free
    let presentation = pres("figure-eight");
    let f = Field::prime(5).unwrap();
    for lam in 1..5i64 {
        let alpha = f.from_i64(lam).neg();
        let sky = skyscraper(presentation.clone(), &alpha).unwrap();
        let aug = cordalg_core::from_sheaf(&sky).unwrap();
        assert!(aug.mu().is_one());
        assert_eq!(aug.lambda(), &f.from_i64(lam));
        assert!(aug.r().is_zero());
        assert_eq!(aug.degenerate_profile(), Profile::AllCordsVanish);
    }
}
