//! Exhaustive enumeration of augmentations over small prime fields.
//!
//! The search space is `mu` over the nonzero field elements and the
//! off-diagonal entries of `R` (the diagonal is forced to `1 - mu`), split
//! into contiguous ranges of a base-`p` odometer for the worker threads.
//! `lambda` is never looped: it is read off as the longitude eigenvalue on
//! the first column, except that `R = 0` leaves it free and every nonzero
//! value is emitted. The inner loop runs on raw residues with rank-one
//! column updates; every surviving candidate is rebuilt as an exact
//! [`Augmentation`] and re-verified through the generic path before it is
//! reported.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::augment::{Augmentation, Profile};
use crate::diagram::{KnotRef, WirtingerPresentation};
use crate::exactalg::{ExactError, Field, Matrix, Scalar};
use crate::reps::{classify_rep, RepClass, Representation};
use crate::words::GroupWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error(transparent)]
    BadField(#[from] ExactError),
    #[error("candidate space {required} exceeds the budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
}

/// A point of the augmentation variety: `(eps(lambda), eps(mu))`, both
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AugPoint {
    pub lambda: Scalar,
    pub mu: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointEntry {
    pub point: AugPoint,
    pub multiplicity: u64,
}

/// Summary of one enumeration run. `wall_ms` is informational and excluded
/// from determinism comparisons; everything else is a pure function of the
/// inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub knot: KnotRef,
    pub prime: u32,
    pub augmentation_count: u64,
    pub points: Vec<PointEntry>,
    pub candidates: u64,
    pub wall_ms: u64,
}

impl EnumerationReport {
    pub fn contains(&self, lambda: u32, mu: u32) -> bool {
        let f = Field::Prime(self.prime);
        self.points.iter().any(|e| {
            e.point.lambda == f.from_i64(i64::from(lambda))
                && e.point.mu == f.from_i64(i64::from(mu))
        })
    }

    /// Normalized copy for determinism comparisons.
    pub fn without_wall_time(&self) -> EnumerationReport {
        let mut r = self.clone();
        r.wall_ms = 0;
        r
    }
}

/// Enumeration output: the report plus every verified augmentation in a
/// deterministic order.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub report: EnumerationReport,
    pub augmentations: Vec<Augmentation>,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    pub budget: u64,
    pub threads: usize,
}

impl Default for EnumerateOptions {
    fn default() -> EnumerateOptions {
        EnumerateOptions {
            budget: 100_000_000,
            threads: 1,
        }
    }
}

struct FpWord {
    letters: Vec<(usize, bool)>, // (zero-based generator, inverted)
}

impl FpWord {
    fn from_word(w: &GroupWord) -> FpWord {
        FpWord {
            letters: w.letters().iter().map(|l| (l.gen - 1, l.exp < 0)).collect(),
        }
    }
}

/// Presentation data flattened for the residue loop.
struct FpContext {
    n: usize,
    p: u64,
    relations: Vec<(FpWord, FpWord)>,
    conjugator_invs: Vec<FpWord>,
    longitude: FpWord,
}

impl FpContext {
    fn new(pres: &WirtingerPresentation, p: u32) -> FpContext {
        FpContext {
            n: pres.n_generators,
            p: u64::from(p),
            relations: pres
                .relations
                .iter()
                .map(|r| (FpWord::from_word(&r.lhs), FpWord::from_word(&r.rhs)))
                .collect(),
            conjugator_invs: pres
                .conjugators
                .iter()
                .map(|g| FpWord::from_word(&g.invert()))
                .collect(),
            longitude: FpWord::from_word(&pres.longitude),
        }
    }

    /// Applies the ambient word action to `v` in place; `r` is column-major.
    fn apply(&self, word: &FpWord, mu_inv: u64, r: &[u64], v: &mut [u64]) {
        let p = self.p;
        for &(t, inverted) in word.letters.iter().rev() {
            let coeff = if inverted {
                mu_inv * v[t] % p
            } else {
                (p - v[t]) % p
            };
            if coeff == 0 {
                continue;
            }
            let col = &r[t * self.n..(t + 1) * self.n];
            for (vi, ci) in v.iter_mut().zip(col) {
                *vi = (*vi + coeff * ci) % p;
            }
        }
    }

    fn column(&self, r: &[u64], j: usize) -> Vec<u64> {
        r[j * self.n..(j + 1) * self.n].to_vec()
    }

    /// Fast candidate check; returns the read-off lambda when `R != 0`,
    /// `None` when `R = 0` (lambda free) and an error when rejected.
    fn check(&self, r: &[u64], mu_inv: u64, scratch: &mut Vec<u64>) -> Result<Option<u64>, ()> {
        let p = self.p;
        for (lhs, rhs) in &self.relations {
            for j in 0..self.n {
                let col = self.column(r, j);
                scratch.clear();
                scratch.extend_from_slice(&col);
                self.apply(lhs, mu_inv, r, scratch);
                let left = scratch.clone();
                scratch.clear();
                scratch.extend_from_slice(&col);
                self.apply(rhs, mu_inv, r, scratch);
                if left != *scratch {
                    return Err(());
                }
            }
        }
        let r1 = self.column(r, 0);
        for (t, g_inv) in self.conjugator_invs.iter().enumerate() {
            scratch.clear();
            scratch.extend_from_slice(&r1);
            self.apply(g_inv, mu_inv, r, scratch);
            if *scratch != self.column(r, t) {
                return Err(());
            }
        }
        if r.iter().all(|&x| x == 0) {
            return Ok(None);
        }
        // longitude eigenvalue on the first column; R1 is nonzero because
        // the conjugator conditions propagate a zero first column to all of R
        scratch.clear();
        scratch.extend_from_slice(&r1);
        self.apply(&self.longitude, mu_inv, r, scratch);
        let pivot = r1.iter().position(|&x| x != 0).ok_or(())?;
        let lambda = scratch[pivot] * mod_inv(r1[pivot], p) % p;
        for (u, x) in scratch.iter().zip(&r1) {
            if *u != lambda * x % p {
                return Err(());
            }
        }
        Ok(Some(lambda))
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime and a nonzero
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Exhaustively enumerates verified augmentations of the knot over `F_p`.
pub fn enumerate(
    knot: &KnotRef,
    presentation: &Arc<WirtingerPresentation>,
    p: u32,
    opts: &EnumerateOptions,
) -> Result<Enumeration, EnumError> {
    let field = Field::prime(p)?;
    let start = Instant::now();
    let n = presentation.n_generators;
    let k = n * n - n;
    let p128 = u128::from(p);
    let cell_count = p128
        .checked_pow(k as u32)
        .ok_or(EnumError::BudgetExceeded {
            required: u128::MAX,
            budget: opts.budget,
        })?;
    let required = cell_count * (p128 - 1);
    if required > u128::from(opts.budget) {
        return Err(EnumError::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }

    let ctx = FpContext::new(presentation, p);
    let threads = opts.threads.max(1).min(cell_count.max(1) as usize);
    let chunk = cell_count / threads as u128 + 1;

    // (mu, odometer, lambda) keys give a deterministic order independent of
    // the thread count
    let mut keyed: Vec<(u64, u128, u64, Augmentation)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let ctx = &ctx;
                let lo = chunk * t as u128;
                let hi = (chunk * (t as u128 + 1)).min(cell_count);
                scope.spawn(move || enumerate_range(ctx, presentation, field, lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });
    keyed.sort_by_key(|k| (k.0, k.1, k.2));
    let augmentations: Vec<Augmentation> = keyed.into_iter().map(|(_, _, _, a)| a).collect();

    let mut tally: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for aug in &augmentations {
        let key = (
            aug.lambda().residue().expect("prime-field scalar"),
            aug.mu().residue().expect("prime-field scalar"),
        );
        *tally.entry(key).or_insert(0) += 1;
    }
    let points = tally
        .into_iter()
        .map(|((l, m), multiplicity)| PointEntry {
            point: AugPoint {
                lambda: field.from_i64(i64::from(l)),
                mu: field.from_i64(i64::from(m)),
            },
            multiplicity,
        })
        .collect();

    let report = EnumerationReport {
        knot: knot.clone(),
        prime: p,
        augmentation_count: augmentations.len() as u64,
        points,
        candidates: required as u64,
        wall_ms: start.elapsed().as_millis() as u64,
    };
    Ok(Enumeration {
        report,
        augmentations,
    })
}

fn enumerate_range(
    ctx: &FpContext,
    presentation: &Arc<WirtingerPresentation>,
    field: Field,
    lo: u128,
    hi: u128,
) -> Vec<(u64, u128, u64, Augmentation)> {
    let n = ctx.n;
    let p = ctx.p;
    let k = n * n - n;
    // off-diagonal slots in row-major order
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    debug_assert_eq!(slots.len(), k);

    let mu_invs: Vec<u64> = (1..p).map(|mu| mod_inv(mu, p)).collect();
    let mut digits = vec![0u64; k];
    let mut r = vec![0u64; n * n]; // column-major
    let mut scratch = Vec::with_capacity(n);
    let mut out = Vec::new();

    for c in lo..hi {
        // decompose the odometer value
        let mut rem = c;
        for d in digits.iter_mut() {
            *d = (rem % u128::from(p)) as u64;
            rem /= u128::from(p);
        }
        for mu in 1..p {
            let diag = (1 + p - mu) % p;
            for (slot, &(i, j)) in slots.iter().enumerate() {
                r[j * n + i] = digits[slot];
            }
            for i in 0..n {
                r[i * n + i] = diag;
            }
            let mu_inv = mu_invs[(mu - 1) as usize];
            match ctx.check(&r, mu_inv, &mut scratch) {
                Err(()) => {}
                Ok(Some(lambda)) => {
                    if lambda != 0 {
                        out.push((
                            mu,
                            c,
                            lambda,
                            build_aug(ctx, presentation, field, &r, mu, lambda),
                        ));
                    }
                }
                Ok(None) => {
                    // R = 0: mu is 1 by the forced diagonal; lambda is free
                    debug_assert_eq!(mu, 1);
                    for lambda in 1..p {
                        out.push((
                            mu,
                            c,
                            lambda,
                            build_aug(ctx, presentation, field, &r, mu, lambda),
                        ));
                    }
                }
            }
        }
    }
    out
}

fn build_aug(
    ctx: &FpContext,
    presentation: &Arc<WirtingerPresentation>,
    field: Field,
    r: &[u64],
    mu: u64,
    lambda: u64,
) -> Augmentation {
    let n = ctx.n;
    let matrix = Matrix::from_fn(field, n, n, |i, j| field.from_i64(r[j * n + i] as i64));
    let aug = Augmentation::new(
        presentation.clone(),
        field.from_i64(mu as i64),
        field.from_i64(lambda as i64),
        matrix,
    )
    .expect("enumerated candidates are structurally valid");
    // the residue fast path and the generic verifier must agree
    assert!(
        aug.verify().is_ok(),
        "fast-path survivor failed generic verification"
    );
    aug
}

/// True iff the report contains the whole locus `{lambda = 1} U {mu = 1}`.
pub fn universal_locus_check(report: &EnumerationReport) -> bool {
    let p = report.prime;
    (1..p).all(|x| report.contains(1, x) && report.contains(x, 1))
}

/// Tally of the correspondence rows over a batch of augmentations and
/// their lifts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusTable {
    pub kch: u64,
    pub unipotent_kch: u64,
    pub all_cords_vanish: u64,
}

impl CensusTable {
    pub fn total(&self) -> u64 {
        self.kch + self.unipotent_kch + self.all_cords_vanish
    }
}

#[derive(Debug, Error, Clone)]
#[error(
    "augmentation {index} has profile {profile} but its lift classifies as {family} \
     (irreducible: {irreducible:?})"
)]
pub struct CensusMismatch {
    pub index: usize,
    pub profile: &'static str,
    pub family: &'static str,
    pub irreducible: Option<bool>,
}

/// Checks each augmentation's profile against the classification of its
/// lift and tallies the three rows. `lifts[i]` must be the lift of
/// `augs[i]`.
pub fn census(
    augs: &[Augmentation],
    lifts: &[Representation],
) -> Result<CensusTable, CensusMismatch> {
    assert_eq!(augs.len(), lifts.len(), "each augmentation needs its lift");
    let mut table = CensusTable::default();
    for (index, (aug, lift)) in augs.iter().zip(lifts).enumerate() {
        let profile = aug.degenerate_profile();
        let class = classify_rep(lift);
        let mismatch = |class: &RepClass| CensusMismatch {
            index,
            profile: profile.tag(),
            family: class.family(),
            irreducible: class.irreducible(),
        };
        match profile {
            Profile::NonvanishingE => match &class {
                RepClass::Kch { mu0, irreducible } if *irreducible && mu0 == aug.mu() => {
                    table.kch += 1;
                }
                other => return Err(mismatch(other)),
            },
            Profile::UnipotentProfile => match &class {
                RepClass::UnipotentKch { irreducible } if *irreducible => {
                    table.unipotent_kch += 1;
                }
                other => return Err(mismatch(other)),
            },
            Profile::AllCordsVanish => match &class {
                RepClass::TrivialOnAllMeridians if lift.dim() == 0 => {
                    table.all_cords_vanish += 1;
                }
                other => return Err(mismatch(other)),
            },
        }
    }
    Ok(table)
}
