//! Shared fixtures and samplers for the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cordalg_core::{
    extend_by_zero, is_simple, pushforward, Field, GroupWord, KnotRef, Letter, Matrix,
    Representation, Scalar, SheafData, WirtingerPresentation,
};

pub fn pres(name: &str) -> Arc<WirtingerPresentation> {
    KnotRef::named(name).presentation().unwrap()
}

/// The classical two-dimensional unipotent representation of the trefoil.
pub fn trefoil_example(field: Field) -> Representation {
    Representation::new(
        pres("trefoil"),
        vec![
            Matrix::from_i64_rows(field, &[&[1, 1], &[0, 1]]),
            Matrix::from_i64_rows(field, &[&[1, 0], &[-1, 1]]),
            Matrix::from_i64_rows(field, &[&[2, 1], &[-1, 0]]),
        ],
    )
    .unwrap()
}

pub fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> Matrix {
    let p = match field {
        Field::Prime(p) => i64::from(p),
        Field::Rational => 5,
    };
    loop {
        let cand = Matrix::from_fn(field, n, n, |_, _| field.from_i64(rng.gen_range(0..p)));
        if cand.is_invertible() {
            return cand;
        }
    }
}

pub fn random_word(rng: &mut ChaCha8Rng, n_gens: usize, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord::from_letters((0..len).map(|_| {
        Letter::new(
            rng.gen_range(1..=n_gens),
            if rng.gen_bool(0.5) { 1 } else { -1 },
        )
    }))
}

/// Twists sheaf data by an invertible pair; preserves validity and the
/// isomorphism class.
pub fn twist(s: &SheafData, pv: &Matrix, pw: &Matrix) -> SheafData {
    let rep = s.complement_rep().conjugate(pv);
    let monodromy = pw.inverse().unwrap().mul(s.knot_monodromy()).mul(pw);
    let transform = pv.inverse().unwrap().mul(s.transform()).mul(pw);
    SheafData::new(rep, monodromy, transform).expect("twisted data stays valid")
}

/// Direct sum with a trivial rank-`a` local system on the ambient space.
pub fn pad_local(s: &SheafData, a: usize) -> SheafData {
    let field = s.field();
    let rep = s.complement_rep().direct_sum(&Representation::trivial(
        s.complement_rep().presentation().clone(),
        field,
        a,
    ));
    let monodromy = s.knot_monodromy().direct_sum(&Matrix::identity(field, a));
    let transform = s.transform().direct_sum(&Matrix::identity(field, a));
    SheafData::new(rep, monodromy, transform).expect("padded data stays valid")
}

pub fn case1_model(presentation: Arc<WirtingerPresentation>, field: Field, r: usize) -> SheafData {
    let rep = Representation::trivial(presentation, field, r + 1);
    let transform = Matrix::identity(field, r).vstack(&Matrix::zeros(field, 1, r));
    SheafData::new(rep, Matrix::identity(field, r), transform).unwrap()
}

pub fn case4_model(
    presentation: Arc<WirtingerPresentation>,
    field: Field,
    alpha: &Scalar,
    r: usize,
) -> SheafData {
    let rep = Representation::trivial(presentation, field, r);
    let mut monodromy = Matrix::identity(field, r + 1);
    monodromy[(0, 0)] = alpha.clone();
    let transform = Matrix::zeros(field, r, 1).hstack(&Matrix::identity(field, r));
    SheafData::new(rep, monodromy, transform).unwrap()
}

pub fn case5_model(presentation: Arc<WirtingerPresentation>, field: Field, r: usize) -> SheafData {
    let rep = Representation::trivial(presentation, field, r + 1);
    let mut monodromy = Matrix::identity(field, r + 2);
    monodromy[(0, 1)] = field.one();
    let transform = Matrix::zeros(field, r + 1, 1).hstack(&Matrix::identity(field, r + 1));
    SheafData::new(rep, monodromy, transform).unwrap()
}

/// Pool of relation-satisfying KCH/unipotent representations with
/// dimension at most 3 over the given prime field.
pub fn rep_pool(field: Field) -> Vec<Representation> {
    let p = match field {
        Field::Prime(p) => p,
        Field::Rational => unreachable!("pool is prime-field only"),
    };
    let mut pool = Vec::new();
    let trefoil = trefoil_example(field);
    pool.push(trefoil.clone());
    pool.push(trefoil.direct_sum(&Representation::trivial(pres("trefoil"), field, 1)));
    for knot in ["unknot", "trefoil", "figure-eight"] {
        let pr = pres(knot);
        for mu0 in 2..p {
            let images = vec![
                Matrix::new(field, 1, 1, vec![field.from_i64(i64::from(mu0))]);
                pr.n_generators
            ];
            let rep = Representation::new(pr.clone(), images).unwrap();
            pool.push(rep.direct_sum(&Representation::trivial(pr.clone(), field, 1)));
            pool.push(rep);
        }
    }
    let unknot = pres("unknot");
    for mu0 in 2..p {
        for extra in 0..3usize {
            let mut m = Matrix::identity(field, extra + 1);
            m[(0, 0)] = field.from_i64(i64::from(mu0));
            pool.push(Representation::new(unknot.clone(), vec![m]).unwrap());
        }
    }
    for n in 2..=3usize {
        let mut m = Matrix::identity(field, n);
        m[(0, 1)] = field.one();
        pool.push(Representation::new(unknot.clone(), vec![m]).unwrap());
    }
    for rep in &pool {
        assert!(rep.check_relations());
    }
    pool
}

/// Deterministic corpus of simple sheaf data covering all five families
/// over the two smallest prime fields, dimensions at most 3.
pub fn sheaf_corpus(count: usize) -> Vec<SheafData> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let fields = [Field::prime(2).unwrap(), Field::prime(3).unwrap()];
    let mut bases: Vec<SheafData> = Vec::new();
    for &field in &fields {
        for rep in rep_pool(field) {
            if rep.dim() <= 3 {
                bases.push(pushforward(&rep));
            }
        }
        for knot in ["unknot", "trefoil"] {
            let pr = pres(knot);
            bases.push(case1_model(pr.clone(), field, 0));
            bases.push(case1_model(pr.clone(), field, 2));
            let p = match field {
                Field::Prime(p) => p,
                _ => unreachable!(),
            };
            for alpha in 1..p {
                let a = field.from_i64(i64::from(alpha));
                bases.push(case4_model(pr.clone(), field, &a, 0));
                bases.push(case4_model(pr.clone(), field, &a, 2));
            }
            bases.push(case5_model(pr.clone(), field, 0));
            bases.push(case5_model(pr.clone(), field, 1));
            let line = Representation::trivial(pr.clone(), field, 1);
            bases.push(extend_by_zero(&line));
        }
    }

    let mut corpus = Vec::with_capacity(count);
    let mut i = 0;
    while corpus.len() < count {
        let base = &bases[i % bases.len()];
        i += 1;
        let mut s = base.clone();
        if rng.gen_bool(0.3) && s.complement_dim() < 3 && s.knot_dim() < 3 {
            s = pad_local(&s, 1);
        }
        let pv = random_invertible(&mut rng, s.field(), s.complement_dim());
        let pw = random_invertible(&mut rng, s.field(), s.knot_dim());
        let s = twist(&s, &pv, &pw);
        assert!(is_simple(&s), "corpus must be simple");
        corpus.push(s);
    }
    corpus
}
