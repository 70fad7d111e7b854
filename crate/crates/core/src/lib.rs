//! Exact-arithmetic invariants of knots built from three equivalent points
//! of view: matrix representations of the knot group, linear-algebra data
//! of sheaves microsupported on the knot conormal, and augmentations of the
//! framed cord algebra.
//!
//! The pipeline starts from a planar diagram code ([`diagram`]), builds the
//! Wirtinger presentation with conjugator words and the zero-framed
//! longitude, and supports:
//!
//! * checking and classifying knot-group representations ([`reps`]),
//! * the simple-sheaf data model, its five-way classification, and moduli
//!   canonical forms ([`sheaf`]),
//! * augmentations with exact evaluation, the sheaf-to-augmentation trace
//!   map, and the lift back to representations ([`augment`]),
//! * brute-force enumeration of the augmentation variety over small prime
//!   fields ([`variety`]).
//!
//! All arithmetic is exact, over the rationals or a prime field with
//! `p < 2^31` ([`exactalg`]); there is no floating point and no tolerance
//! anywhere.

pub mod augment;
pub mod diagram;
pub mod exactalg;
mod json;
pub mod reps;
pub mod sheaf;
pub mod variety;
pub mod words;

pub use augment::{from_kch_rep, from_sheaf, AugmentError, Augmentation, Profile, VerifyFailure};
pub use diagram::{
    builtin_names, builtin_pd, parse_pd, wirtinger, KnotRef, PdCode, PdError, Relation,
    WirtingerPresentation,
};
pub use exactalg::{rank_one_update, ExactError, Field, Matrix, Scalar};
pub use reps::{
    are_isomorphic, are_isomorphic_with, classify_meridian, classify_rep, Iso, IsoOptions,
    MeridianClass, RepClass, RepError, Representation,
};
pub use sheaf::{
    classify, ext1_dim, extend_by_zero, is_simple, moduli_canonical, pushforward,
    same_moduli_class, sheaves_isomorphic, skyscraper, verify_iso, SheafClass, SheafData,
    SheafError, SheafIso, SheafKind,
};
pub use variety::{
    census, enumerate, universal_locus_check, AugPoint, CensusMismatch, CensusTable, EnumError,
    EnumerateOptions, Enumeration, EnumerationReport, PointEntry,
};
pub use words::{GroupWord, Letter, WordParseError};
