//! Sheaf data microsupported on a knot conormal, in linear-algebra form.
//!
//! A sheaf on the ambient space whose singular support lies along the knot
//! conormal is equivalent to a triple: a knot-group representation `rho` on
//! the complement stalk `V`, an invertible knot monodromy `A` on the knot
//! stalk `W`, and a restriction transform `T: W -> V` compatible with the
//! longitude and fixed by the preferred meridian. The ambient space label
//! (Euclidean space vs the three-sphere) has no computational effect and is
//! not stored.
//!
//! A triple is *simple* when `cone(T)` has rank one, i.e. when
//! `dim ker T + dim coker T = 1`. Simple triples fall into exactly five
//! isomorphism families, and `classify` picks the family constructively,
//! returning a certificate with an explicit isomorphism onto a canonical
//! reconstruction.

use std::sync::Arc;

use thiserror::Error;

use crate::diagram::WirtingerPresentation;
use crate::exactalg::{Field, Matrix, Scalar};
use crate::reps::{
    classify_meridian, search_solution_space, Iso, IsoOptions, MeridianClass, Representation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SheafError {
    #[error("complement representation does not satisfy the Wirtinger relations")]
    RelationsFail,
    #[error("knot monodromy must be an invertible square matrix over the common field")]
    BadMonodromy,
    #[error("transform must map the knot stalk into the complement stalk")]
    BadTransformShape,
    #[error("longitude compatibility fails: rho(l) T != T A")]
    LongitudeCompat,
    #[error("the preferred meridian does not fix the image of the transform")]
    MeridianCompat,
    #[error("sheaf data is not simple")]
    NotSimple,
    #[error("monodromy or eigenvalue parameter must be nonzero")]
    ZeroParameter,
}

/// The triple `(rho on V, A on W, T: W -> V)` with the two compatibility
/// conditions: `rho(l) T = T A` and `(I - rho(m1)) T = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafData {
    complement_rep: Representation,
    knot_monodromy: Matrix,
    transform: Matrix,
}

impl SheafData {
    pub fn new(
        complement_rep: Representation,
        knot_monodromy: Matrix,
        transform: Matrix,
    ) -> Result<SheafData, SheafError> {
        let field = complement_rep.field();
        if !complement_rep.check_relations() {
            return Err(SheafError::RelationsFail);
        }
        if !knot_monodromy.is_square()
            || knot_monodromy.field() != field
            || !knot_monodromy.is_invertible()
        {
            return Err(SheafError::BadMonodromy);
        }
        if transform.rows() != complement_rep.dim()
            || transform.cols() != knot_monodromy.rows()
            || transform.field() != field
        {
            return Err(SheafError::BadTransformShape);
        }
        let rho_l = complement_rep.evaluate(&complement_rep.presentation().longitude);
        if rho_l.mul(&transform) != transform.mul(&knot_monodromy) {
            return Err(SheafError::LongitudeCompat);
        }
        let n = complement_rep.dim();
        let moved = Matrix::identity(field, n)
            .sub(complement_rep.image(1))
            .mul(&transform);
        if !moved.is_zero() {
            return Err(SheafError::MeridianCompat);
        }
        Ok(SheafData {
            complement_rep,
            knot_monodromy,
            transform,
        })
    }

    pub fn complement_rep(&self) -> &Representation {
        &self.complement_rep
    }

    pub fn knot_monodromy(&self) -> &Matrix {
        &self.knot_monodromy
    }

    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    pub fn field(&self) -> Field {
        self.complement_rep.field()
    }

    pub fn presentation(&self) -> &Arc<WirtingerPresentation> {
        self.complement_rep.presentation()
    }

    pub fn complement_dim(&self) -> usize {
        self.complement_rep.dim()
    }

    pub fn knot_dim(&self) -> usize {
        self.knot_monodromy.rows()
    }
}

/// True iff `dim ker T + dim coker T = 1`: either `T` is injective with a
/// rank-one cokernel or surjective with a rank-one kernel.
pub fn is_simple(s: &SheafData) -> bool {
    let t = s.transform();
    let rank = t.rank();
    let ker = t.cols() - rank;
    let coker = t.rows() - rank;
    ker + coker == 1
}

/// Pushforward of a local system on the complement: the knot stalk is the
/// fixed subspace of the preferred meridian, the transform its inclusion,
/// and the knot monodromy the longitude restricted to it.
pub fn pushforward(rep: &Representation) -> SheafData {
    assert!(
        rep.check_relations(),
        "pushforward requires a relation-satisfying representation"
    );
    let fixed = rep.image(1).fixed_subspace();
    let rho_l = rep.evaluate(&rep.presentation().longitude);
    let monodromy = fixed
        .solve_matrix(&rho_l.mul(&fixed))
        .expect("longitude preserves the meridian-fixed subspace");
    SheafData::new(rep.clone(), monodromy, fixed).expect("pushforward data is valid")
}

/// The rank-one sheaf supported on the knot with monodromy `alpha`,
/// together with a zero complement stalk.
pub fn skyscraper(
    presentation: Arc<WirtingerPresentation>,
    alpha: &Scalar,
) -> Result<SheafData, SheafError> {
    if alpha.is_zero() {
        return Err(SheafError::ZeroParameter);
    }
    let field = alpha.field();
    let rep = Representation::trivial(presentation, field, 0);
    let monodromy = Matrix::new(field, 1, 1, vec![alpha.clone()]);
    let transform = Matrix::zeros(field, 0, 1);
    SheafData::new(rep, monodromy, transform)
}

/// Extension by zero of a complement local system: empty knot stalk.
pub fn extend_by_zero(rep: &Representation) -> SheafData {
    assert!(
        rep.check_relations(),
        "extend_by_zero requires a relation-satisfying representation"
    );
    let field = rep.field();
    let monodromy = Matrix::zeros(field, 0, 0);
    let transform = Matrix::zeros(field, rep.dim(), 0);
    SheafData::new(rep.clone(), monodromy, transform).expect("zero extension is valid")
}

/// Explicit isomorphism certificate: invertible intertwiners from the
/// classified input onto its canonical reconstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafIso {
    pub phi_v: Matrix,
    pub phi_w: Matrix,
}

/// The five-family classification outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafKind {
    /// Constant local system plus the extension by zero of a rank-one
    /// constant sheaf on the complement.
    ZeroExtensionConstant { local_rank: usize },
    /// Pushforward of a KCH local system; the certificate is the
    /// complement representation itself.
    KchPushforward { rep: Representation },
    /// Pushforward of a unipotent KCH local system.
    UnipotentPushforward { rep: Representation },
    /// Constant local system plus a rank-one sheaf on the knot with the
    /// given monodromy.
    Skyscraper { alpha: Scalar, local_rank: usize },
    /// Constant local system plus a non-splitting extension of the ambient
    /// constant sheaf by the constant sheaf on the knot. The extension
    /// vector `v` satisfies `(A - I)v` spanning `ker T`, witnessing that
    /// the extension does not split.
    KnotExtension {
        local_rank: usize,
        extension_vector: Vec<Scalar>,
    },
}

impl SheafKind {
    pub fn tag(&self) -> &'static str {
        match self {
            SheafKind::ZeroExtensionConstant { .. } => "zero_extension_constant",
            SheafKind::KchPushforward { .. } => "kch_pushforward",
            SheafKind::UnipotentPushforward { .. } => "unipotent_pushforward",
            SheafKind::Skyscraper { .. } => "skyscraper",
            SheafKind::KnotExtension { .. } => "knot_extension",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SheafClass {
    pub kind: SheafKind,
    pub iso: SheafIso,
    presentation: Arc<WirtingerPresentation>,
    field: Field,
}

impl SheafClass {
    /// Builds the canonical sheaf data this certificate describes.
    pub fn reconstruct(&self) -> SheafData {
        let field = self.field;
        let pres = self.presentation.clone();
        match &self.kind {
            SheafKind::ZeroExtensionConstant { local_rank } => {
                let r = *local_rank;
                let rep = Representation::trivial(pres, field, r + 1);
                let monodromy = Matrix::identity(field, r);
                let transform = Matrix::identity(field, r).vstack(&Matrix::zeros(field, 1, r));
                SheafData::new(rep, monodromy, transform).expect("canonical data is valid")
            }
            SheafKind::KchPushforward { rep } | SheafKind::UnipotentPushforward { rep } => {
                pushforward(rep)
            }
            SheafKind::Skyscraper { alpha, local_rank } => {
                let r = *local_rank;
                let rep = Representation::trivial(pres, field, r);
                let mut monodromy = Matrix::identity(field, r + 1);
                monodromy[(0, 0)] = alpha.clone();
                let transform = Matrix::zeros(field, r, 1).hstack(&Matrix::identity(field, r));
                SheafData::new(rep, monodromy, transform).expect("canonical data is valid")
            }
            SheafKind::KnotExtension { local_rank, .. } => {
                let r = *local_rank;
                let rep = Representation::trivial(pres, field, r + 1);
                let mut monodromy = Matrix::identity(field, r + 2);
                monodromy[(0, 1)] = field.one();
                let transform =
                    Matrix::zeros(field, r + 1, 1).hstack(&Matrix::identity(field, r + 1));
                SheafData::new(rep, monodromy, transform).expect("canonical data is valid")
            }
        }
    }
}

/// Checks that an isomorphism certificate really intertwines two sheaf
/// data triples.
pub fn verify_iso(from: &SheafData, to: &SheafData, iso: &SheafIso) -> bool {
    let n_ok = iso.phi_v.rows() == to.complement_dim()
        && iso.phi_v.cols() == from.complement_dim()
        && iso.phi_w.rows() == to.knot_dim()
        && iso.phi_w.cols() == from.knot_dim();
    if !n_ok || !iso.phi_v.is_invertible() || !iso.phi_w.is_invertible() {
        return false;
    }
    for t in 1..=from.presentation().n_generators {
        let lhs = iso.phi_v.mul(from.complement_rep().image(t));
        let rhs = to.complement_rep().image(t).mul(&iso.phi_v);
        if lhs != rhs {
            return false;
        }
    }
    if iso.phi_w.mul(from.knot_monodromy()) != to.knot_monodromy().mul(&iso.phi_w) {
        return false;
    }
    iso.phi_v.mul(from.transform()) == to.transform().mul(&iso.phi_w)
}

/// Classifies a simple triple into one of the five families, following the
/// constructive case analysis on whether `T` is injective or surjective.
pub fn classify(s: &SheafData) -> Result<SheafClass, SheafError> {
    if !is_simple(s) {
        return Err(SheafError::NotSimple);
    }
    let field = s.field();
    let pres = s.presentation().clone();
    let t = s.transform();
    let n = s.complement_dim();
    let w = s.knot_dim();
    let kernel = t.kernel_basis();

    let class = if kernel.cols() == 0 {
        // T injective, rank-one cokernel: the meridian fixes im T, so its
        // fixed subspace has codimension zero or one
        let mc = classify_meridian(s.complement_rep().image(1)).expect("images are invertible");
        match mc {
            MeridianClass::IdentityAction => {
                // fully trivial actions; A is forced to the identity
                debug_assert!(s.knot_monodromy().is_identity());
                let mut p_cols: Vec<Vec<Scalar>> = (0..w).map(|j| t.col(j)).collect();
                let span = t.clone();
                for i in 0..n {
                    let mut e = vec![field.zero(); n];
                    e[i] = field.one();
                    let cand = span.hstack(&Matrix::from_cols(field, n, &[e.clone()]));
                    if cand.rank() > span.rank() {
                        p_cols.push(e);
                        break;
                    }
                }
                let p = Matrix::from_cols(field, n, &p_cols);
                let phi_v = p.inverse().expect("basis completion is invertible");
                SheafClass {
                    kind: SheafKind::ZeroExtensionConstant { local_rank: w },
                    iso: SheafIso {
                        phi_v,
                        phi_w: Matrix::identity(field, w),
                    },
                    presentation: pres,
                    field,
                }
            }
            MeridianClass::Kch { .. } | MeridianClass::Unipotent { .. } => {
                // the knot stalk is exactly the meridian-fixed subspace
                let fixed = s.complement_rep().image(1).fixed_subspace();
                debug_assert_eq!(fixed.cols(), w);
                let phi_w = fixed
                    .solve_matrix(t)
                    .expect("im T equals the meridian-fixed subspace");
                let iso = SheafIso {
                    phi_v: Matrix::identity(field, n),
                    phi_w,
                };
                let rep = s.complement_rep().clone();
                let kind = if matches!(mc, MeridianClass::Kch { .. }) {
                    SheafKind::KchPushforward { rep }
                } else {
                    SheafKind::UnipotentPushforward { rep }
                };
                SheafClass {
                    kind,
                    iso,
                    presentation: pres,
                    field,
                }
            }
            MeridianClass::Other => unreachable!(
                "validated sheaf data cannot have meridian defect of codimension >= 2 \
                 with an injective transform"
            ),
        }
    } else {
        // T surjective with one-dimensional kernel; the complement action
        // is trivial and the monodromy preserves ker T
        debug_assert_eq!(kernel.cols(), 1);
        debug_assert_eq!(t.rank(), n);
        let a = s.knot_monodromy();
        let w0 = kernel.col(0);
        let aw0 = a.mul_vec(&w0);
        let c0 = ratio(&aw0, &w0).expect("monodromy preserves ker T");

        // preimages of the standard basis of V
        let preimages: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut e = vec![field.zero(); n];
                e[i] = field.one();
                t.solve_vec(&e).expect("T is surjective")
            })
            .collect();

        if !c0.is_one() || a.is_identity() {
            // splitting exists: adjust preimages to be fixed by A
            let one_minus_c0_inv = field.one().sub(&c0).inv();
            let mut q_cols = vec![w0.clone()];
            for wi in &preimages {
                let awi = a.mul_vec(wi);
                let diff: Vec<Scalar> = awi.iter().zip(wi).map(|(x, y)| x.sub(y)).collect();
                let ci = ratio(&diff, &w0).expect("A - I maps into ker T");
                let adjusted: Vec<Scalar> = match &one_minus_c0_inv {
                    Some(inv) => wi
                        .iter()
                        .zip(&w0)
                        .map(|(x, z)| x.add(&inv.mul(&ci).mul(z)))
                        .collect(),
                    None => {
                        debug_assert!(ci.is_zero(), "identity monodromy has no defect");
                        wi.clone()
                    }
                };
                q_cols.push(adjusted);
            }
            let q = Matrix::from_cols(field, w, &q_cols);
            let phi_w = q.inverse().expect("splitting basis is invertible");
            SheafClass {
                kind: SheafKind::Skyscraper {
                    alpha: c0,
                    local_rank: n,
                },
                iso: SheafIso {
                    phi_v: Matrix::identity(field, n),
                    phi_w,
                },
                presentation: pres,
                field,
            }
        } else {
            // c0 = 1 with A != I: non-splitting extension; (A - I) has
            // rank one with image ker T
            let defect = a.sub(&Matrix::identity(field, w));
            let w_ext = defect.solve_vec(&w0).expect("w0 lies in im(A - I)");
            let ker_defect = defect.kernel_basis();
            let mut q_cols = vec![w0.clone(), w_ext.clone()];
            let mut span = Matrix::from_cols(field, w, std::slice::from_ref(&w0));
            for j in 0..ker_defect.cols() {
                let cand = ker_defect.col(j);
                let grown = span.hstack(&Matrix::from_cols(field, w, std::slice::from_ref(&cand)));
                if grown.rank() > span.rank() {
                    q_cols.push(cand);
                    span = grown;
                }
            }
            debug_assert_eq!(q_cols.len(), w);
            let q = Matrix::from_cols(field, w, &q_cols);
            debug_assert!(q.is_invertible());
            let phi_w = q.inverse().expect("extension basis is invertible");
            let image_cols: Vec<Vec<Scalar>> = q_cols[1..].iter().map(|c| t.mul_vec(c)).collect();
            let phi_v = Matrix::from_cols(field, n, &image_cols)
                .inverse()
                .expect("T identifies the complement basis");
            SheafClass {
                kind: SheafKind::KnotExtension {
                    local_rank: w - 2,
                    extension_vector: w_ext,
                },
                iso: SheafIso { phi_v, phi_w },
                presentation: pres,
                field,
            }
        }
    };

    debug_assert!(verify_iso(s, &class.reconstruct(), &class.iso));
    Ok(class)
}

/// Scalar `c` with `v = c * base`, when `base` is nonzero and `v` is
/// proportional to it; `Some(0)` when `v` is zero.
fn ratio(v: &[Scalar], base: &[Scalar]) -> Option<Scalar> {
    let pivot = base.iter().position(|x| !x.is_zero())?;
    let c = v[pivot].div(&base[pivot]).expect("pivot is nonzero");
    v.iter().zip(base).all(|(x, y)| *x == c.mul(y)).then_some(c)
}

/// Canonical form in the moduli of simple sheaves up to local systems:
/// a pushforward of the irreducible defect part of a KCH-type
/// representation, or a skyscraper.
///
/// A unipotent pushforward whose defect subspace is a single trivial line
/// (the representation is an extension of trivial representations) has no
/// KCH-type core; chasing the quotient sequences it lands in the same
/// class as the zero-extension and knot-extension cases, the unit
/// skyscraper.
pub fn moduli_canonical(s: &SheafData) -> Result<SheafData, SheafError> {
    let class = classify(s)?;
    match class.kind {
        SheafKind::ZeroExtensionConstant { .. } | SheafKind::KnotExtension { .. } => {
            skyscraper(s.presentation().clone(), &s.field().one())
        }
        SheafKind::KchPushforward { rep } | SheafKind::UnipotentPushforward { rep } => {
            let defect = rep.meridian_defect();
            let restricted = rep.restrict(&defect).expect("defect subspace is invariant");
            if restricted.image(1).is_identity() {
                return skyscraper(s.presentation().clone(), &s.field().one());
            }
            Ok(pushforward(&restricted))
        }
        SheafKind::Skyscraper { alpha, .. } => skyscraper(s.presentation().clone(), &alpha),
    }
}

/// Conservative moduli equality: compares canonical forms structurally.
pub fn same_moduli_class(a: &SheafData, b: &SheafData) -> Result<bool, SheafError> {
    Ok(moduli_canonical(a)? == moduli_canonical(b)?)
}

/// Dimension of the space of gluings of a rank-one knot-stalk local system
/// with monodromy `alpha` onto the complement representation: the
/// simultaneous eigenspace `{v : rho(m1) v = v, rho(l) v = alpha v}`.
pub fn ext1_dim(rep: &Representation, alpha: &Scalar) -> Result<usize, SheafError> {
    if alpha.is_zero() {
        return Err(SheafError::ZeroParameter);
    }
    assert!(
        rep.check_relations(),
        "ext1_dim requires a relation-satisfying representation"
    );
    let field = rep.field();
    let n = rep.dim();
    let id = Matrix::identity(field, n);
    let m_defect = rep.image(1).sub(&id);
    let l_defect = rep
        .evaluate(&rep.presentation().longitude)
        .sub(&id.scale(alpha));
    Ok(m_defect.vstack(&l_defect).kernel_basis().cols())
}

/// Isomorphism test at the level of the triple: searches for a pair of
/// invertible intertwiners compatible with both monodromies and the
/// transform.
pub fn sheaves_isomorphic(s1: &SheafData, s2: &SheafData, opts: &IsoOptions) -> Iso {
    assert_eq!(
        s1.presentation(),
        s2.presentation(),
        "isomorphism requires the same presentation"
    );
    assert_eq!(s1.field(), s2.field(), "mixed-field arithmetic is rejected");
    if s1.complement_dim() != s2.complement_dim() || s1.knot_dim() != s2.knot_dim() {
        return Iso::NotIsomorphic;
    }
    let n = s1.complement_dim();
    let w = s1.knot_dim();
    if n == 0 && w == 0 {
        return Iso::Isomorphic;
    }
    let field = s1.field();
    let unknowns = n * n + w * w;
    let vpos = |i: usize, k: usize| i * n + k;
    let wpos = |i: usize, k: usize| n * n + i * w + k;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();

    // phi_v rho1(m_t) = rho2(m_t) phi_v
    for t in 1..=s1.presentation().n_generators {
        let a = s1.complement_rep().image(t);
        let b = s2.complement_rep().image(t);
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![field.zero(); unknowns];
                for k in 0..n {
                    row[vpos(i, k)] = row[vpos(i, k)].add(&a[(k, j)]);
                    row[vpos(k, j)] = row[vpos(k, j)].sub(&b[(i, k)]);
                }
                rows.push(row);
            }
        }
    }
    // phi_w A1 = A2 phi_w
    for i in 0..w {
        for j in 0..w {
            let mut row = vec![field.zero(); unknowns];
            for k in 0..w {
                row[wpos(i, k)] = row[wpos(i, k)].add(&s1.knot_monodromy()[(k, j)]);
                row[wpos(k, j)] = row[wpos(k, j)].sub(&s2.knot_monodromy()[(i, k)]);
            }
            rows.push(row);
        }
    }
    // phi_v T1 = T2 phi_w
    for i in 0..n {
        for j in 0..w {
            let mut row = vec![field.zero(); unknowns];
            for k in 0..n {
                row[vpos(i, k)] = row[vpos(i, k)].add(&s1.transform()[(k, j)]);
            }
            for k in 0..w {
                row[wpos(k, j)] = row[wpos(k, j)].sub(&s2.transform()[(i, k)]);
            }
            rows.push(row);
        }
    }

    let system = Matrix::from_fn(field, rows.len(), unknowns, |i, j| rows[i][j].clone());
    let basis = system.kernel_basis();
    search_solution_space(&basis, n + w, opts, |v| {
        let phi_v = Matrix::from_fn(field, n, n, |i, k| v[vpos(i, k)].clone());
        let phi_w = Matrix::from_fn(field, w, w, |i, k| v[wpos(i, k)].clone());
        phi_v.is_invertible() && phi_w.is_invertible()
    })
}
