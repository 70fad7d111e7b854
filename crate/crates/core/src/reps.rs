//! Knot-group representations by exact invertible matrices.
//!
//! A representation assigns one invertible matrix per meridian generator of
//! a Wirtinger presentation. The meridian normal-form classifier puts a
//! single matrix into one of four shapes — identity, `I + (mu0-1)E11` with
//! `mu0` outside `{0,1}`, the unipotent `I + E12`, or none of these — with
//! an explicit basis-change certificate for the first three.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::WirtingerPresentation;
use crate::exactalg::{Field, Matrix, Scalar};
use crate::words::GroupWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("generator image {index} is not an invertible square matrix of the common size")]
    BadImage { index: usize },
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("subspace is not invariant under the representation")]
    NotInvariant,
}

/// A matrix representation of a knot group, one image per meridian
/// generator. Zero-dimensional representations are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Representation {
    presentation: Arc<WirtingerPresentation>,
    images: Vec<Matrix>,
    inverses: Vec<Matrix>,
    field: Field,
}

impl Representation {
    pub fn new(
        presentation: Arc<WirtingerPresentation>,
        images: Vec<Matrix>,
    ) -> Result<Representation, RepError> {
        let expected = presentation.n_generators;
        if images.len() != expected {
            return Err(RepError::WrongImageCount {
                expected,
                got: images.len(),
            });
        }
        let dim = images.first().map_or(0, Matrix::rows);
        let field = images.first().map_or(Field::Rational, Matrix::field);
        let mut inverses = Vec::with_capacity(images.len());
        for (index, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim || m.field() != field {
                return Err(RepError::BadImage { index });
            }
            inverses.push(m.inverse().ok_or(RepError::BadImage { index })?);
        }
        Ok(Representation {
            presentation,
            images,
            inverses,
            field,
        })
    }

    /// The trivial representation of the given dimension.
    pub fn trivial(
        presentation: Arc<WirtingerPresentation>,
        field: Field,
        dim: usize,
    ) -> Representation {
        let images = vec![Matrix::identity(field, dim); presentation.n_generators];
        Representation::new(presentation, images).expect("identity images are invertible")
    }

    pub fn presentation(&self) -> &Arc<WirtingerPresentation> {
        &self.presentation
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &Matrix {
        &self.images[gen - 1]
    }

    pub fn dim(&self) -> usize {
        self.images.first().map_or(0, Matrix::rows)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Ordered product of generator images along a word.
    pub fn evaluate(&self, w: &GroupWord) -> Matrix {
        assert!(
            w.max_generator() <= self.presentation.n_generators,
            "word uses a generator outside the presentation"
        );
        let mut acc = Matrix::identity(self.field, self.dim());
        for l in w.letters() {
            let m = if l.exp == 1 {
                &self.images[l.gen - 1]
            } else {
                &self.inverses[l.gen - 1]
            };
            acc = acc.mul(m);
        }
        acc
    }

    /// True iff every Wirtinger relation holds as a matrix identity.
    pub fn check_relations(&self) -> bool {
        self.presentation
            .relations
            .iter()
            .all(|r| self.evaluate(&r.lhs) == self.evaluate(&r.rhs))
    }

    /// Canonical basis of the meridian-defect subspace, the sum over all
    /// generators of `im(rho(m_i) - I)`. For KCH-type representations this
    /// is the canonical irreducible subrepresentation.
    pub fn meridian_defect(&self) -> Matrix {
        let n = self.dim();
        let id = Matrix::identity(self.field, n);
        let mut stacked = Matrix::zeros(self.field, n, 0);
        for m in &self.images {
            stacked = stacked.hstack(&m.sub(&id));
        }
        stacked.column_space_basis()
    }

    /// Restricts to an invariant subspace given by basis columns, returning
    /// the induced representation in that basis.
    pub fn restrict(&self, basis: &Matrix) -> Result<Representation, RepError> {
        assert_eq!(basis.rows(), self.dim(), "basis vectors have wrong length");
        let mut images = Vec::with_capacity(self.images.len());
        for m in &self.images {
            let mapped = m.mul(basis);
            let induced = basis.solve_matrix(&mapped).ok_or(RepError::NotInvariant)?;
            if basis.mul(&induced) != mapped {
                return Err(RepError::NotInvariant);
            }
            images.push(induced);
        }
        Representation::new(self.presentation.clone(), images)
    }

    /// Direct sum with another representation of the same presentation.
    pub fn direct_sum(&self, other: &Representation) -> Representation {
        assert_eq!(
            self.presentation, other.presentation,
            "direct sum requires the same presentation"
        );
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Representation::new(self.presentation.clone(), images).expect("block sum is invertible")
    }

    /// Conjugates every image by an invertible matrix `p`: `m -> p^{-1} m p`.
    pub fn conjugate(&self, p: &Matrix) -> Representation {
        let p_inv = p.inverse().expect("conjugating matrix must be invertible");
        let images = self.images.iter().map(|m| p_inv.mul(m).mul(p)).collect();
        Representation::new(self.presentation.clone(), images).expect("conjugate is invertible")
    }
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Representation(dim {}, {} generators over {})",
            self.dim(),
            self.images.len(),
            self.field
        )
    }
}

/// Normal-form class of a single meridian image, with a basis-change
/// certificate `P` such that `P^{-1} A P` is the normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeridianClass {
    /// Acts as the identity.
    IdentityAction,
    /// Diagonalizable, fixing a codimension-one subspace; `mu0` is the
    /// eigenvalue off that subspace, never 0 or 1.
    Kch { mu0: Scalar, basis_change: Matrix },
    /// Fixes a codimension-one subspace but is not diagonalizable;
    /// normalizes to `I + E12`.
    Unipotent { basis_change: Matrix },
    /// Fixed subspace has codimension at least two.
    Other,
}

impl MeridianClass {
    pub fn tag(&self) -> &'static str {
        match self {
            MeridianClass::IdentityAction => "IdentityAction",
            MeridianClass::Kch { .. } => "KCH",
            MeridianClass::Unipotent { .. } => "Unipotent",
            MeridianClass::Other => "Other",
        }
    }
}

/// Classifies an invertible matrix by the codimension of its fixed subspace.
///
/// In the codimension-one case diagonalizability is decided by
/// `rank((A-I)^2) = rank(A-I)`, which suffices because the only eigenvalues
/// in play are 1 and the defect eigenvalue.
pub fn classify_meridian(a: &Matrix) -> Result<MeridianClass, RepError> {
    if !a.is_square() {
        return Err(RepError::NotSquare);
    }
    if !a.is_invertible() {
        return Err(RepError::Singular);
    }
    let field = a.field();
    let n = a.rows();
    let defect = a.sub(&Matrix::identity(field, n));
    let fixed = defect.kernel_basis();
    let codim = n - fixed.cols();
    match codim {
        0 => Ok(MeridianClass::IdentityAction),
        1 => {
            let diagonalizable = defect.mul(&defect).rank() == defect.rank();
            if diagonalizable {
                // trace determines the non-1 eigenvalue exactly
                let mut mu0 = a.trace();
                mu0 = mu0.sub(&field.from_i64(n as i64 - 1));
                let eigen = a
                    .sub(&Matrix::identity(field, n).scale(&mu0))
                    .kernel_basis();
                debug_assert_eq!(eigen.cols(), 1);
                let basis_change = eigen.hstack(&fixed);
                debug_assert!(basis_change.is_invertible());
                Ok(MeridianClass::Kch { mu0, basis_change })
            } else {
                // (A-I)^2 = 0 with rank one: pick u spanning the image,
                // a preimage v with (A-I)v = u, and extend u to a basis of
                // the fixed subspace
                let image = defect.column_space_basis();
                debug_assert_eq!(image.cols(), 1);
                let u = image.col(0);
                let v = defect.solve_vec(&u).expect("u lies in the image");
                let mut cols = vec![u.clone(), v];
                let mut span = image.clone();
                for j in 0..fixed.cols() {
                    let cand = fixed.col(j);
                    let candidate_mat =
                        span.hstack(&Matrix::from_cols(field, n, std::slice::from_ref(&cand)));
                    if candidate_mat.rank() > span.rank() {
                        cols.push(cand);
                        span = candidate_mat;
                    }
                }
                let mut order = vec![cols[0].clone(), cols[1].clone()];
                order.extend(cols[2..].iter().cloned());
                let basis_change = Matrix::from_cols(field, n, &order);
                debug_assert!(basis_change.is_invertible());
                Ok(MeridianClass::Unipotent { basis_change })
            }
        }
        _ => Ok(MeridianClass::Other),
    }
}

/// The expected normal form for a classified meridian, for checking the
/// basis-change certificate.
pub fn meridian_normal_form(field: Field, n: usize, class: &MeridianClass) -> Matrix {
    let mut m = Matrix::identity(field, n);
    match class {
        MeridianClass::IdentityAction | MeridianClass::Other => m,
        MeridianClass::Kch { mu0, .. } => {
            m[(0, 0)] = mu0.clone();
            m
        }
        MeridianClass::Unipotent { .. } => {
            m[(0, 1)] = field.one();
            m
        }
    }
}

/// Family classification of a whole representation. Irreducibility is
/// decided by whether the meridian-defect subspace is everything; it is
/// only reported for the KCH and unipotent families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepClass {
    TrivialOnAllMeridians,
    Kch { mu0: Scalar, irreducible: bool },
    UnipotentKch { irreducible: bool },
    Other,
}

impl RepClass {
    pub fn family(&self) -> &'static str {
        match self {
            RepClass::TrivialOnAllMeridians => "TrivialOnAllMeridians",
            RepClass::Kch { .. } => "KCH",
            RepClass::UnipotentKch { .. } => "UnipotentKCH",
            RepClass::Other => "Other",
        }
    }

    pub fn irreducible(&self) -> Option<bool> {
        match self {
            RepClass::Kch { irreducible, .. } | RepClass::UnipotentKch { irreducible } => {
                Some(*irreducible)
            }
            _ => None,
        }
    }
}

/// Classifies a relation-satisfying representation by the normal form of
/// its first meridian image (all meridians are conjugate, so one suffices).
pub fn classify_rep(rep: &Representation) -> RepClass {
    assert!(
        rep.check_relations(),
        "classify_rep requires a relation-satisfying representation"
    );
    if rep.dim() == 0 {
        return RepClass::TrivialOnAllMeridians;
    }
    let class = classify_meridian(rep.image(1)).expect("images are invertible");
    match class {
        MeridianClass::IdentityAction => RepClass::TrivialOnAllMeridians,
        MeridianClass::Kch { mu0, .. } => RepClass::Kch {
            mu0,
            irreducible: rep.meridian_defect().cols() == rep.dim(),
        },
        MeridianClass::Unipotent { .. } => RepClass::UnipotentKch {
            irreducible: rep.meridian_defect().cols() == rep.dim(),
        },
        MeridianClass::Other => RepClass::Other,
    }
}

/// Outcome of an isomorphism search. `Unknown` is reported when the
/// invertible-intertwiner search was not exhaustive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Iso {
    Isomorphic,
    NotIsomorphic,
    Unknown,
}

/// Options for the invertible-point search inside a solution space.
#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    /// Exhaustive enumeration is used when the number of candidate
    /// coefficient vectors is at most this bound.
    pub enumeration_limit: u64,
    /// Number of random samples tried otherwise.
    pub samples: u32,
    pub seed: u64,
}

impl Default for IsoOptions {
    fn default() -> IsoOptions {
        IsoOptions {
            enumeration_limit: 1 << 15,
            samples: 64,
            seed: 0,
        }
    }
}

/// Decides whether two representations of the same presentation are
/// isomorphic, by solving the intertwiner system `X r1(m_t) = r2(m_t) X`
/// and searching its solution space for an invertible element.
pub fn are_isomorphic(r1: &Representation, r2: &Representation) -> Iso {
    are_isomorphic_with(r1, r2, &IsoOptions::default())
}

pub fn are_isomorphic_with(r1: &Representation, r2: &Representation, opts: &IsoOptions) -> Iso {
    assert_eq!(
        r1.presentation(),
        r2.presentation(),
        "isomorphism requires the same presentation"
    );
    assert_eq!(r1.field(), r2.field(), "mixed-field arithmetic is rejected");
    if r1.dim() != r2.dim() {
        return Iso::NotIsomorphic;
    }
    let n = r1.dim();
    if n == 0 {
        return Iso::Isomorphic;
    }
    let field = r1.field();

    // rows of the homogeneous system over the n^2 unknowns X[i][k]
    let unknowns = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for t in 0..r1.images().len() {
        let a = &r1.images()[t];
        let b = &r2.images()[t];
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![field.zero(); unknowns];
                for k in 0..n {
                    // X[i][k] a[k][j]
                    row[i * n + k] = row[i * n + k].add(&a[(k, j)]);
                    // - b[i][k] X[k][j]
                    row[k * n + j] = row[k * n + j].sub(&b[(i, k)]);
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_fn(field, rows.len(), unknowns, |i, j| rows[i][j].clone());
    let basis = system.kernel_basis();
    search_solution_space(&basis, n, opts, |v| {
        let x = Matrix::from_fn(field, n, n, |i, j| v[i * n + j].clone());
        x.is_invertible()
    })
}

/// Searches `span(basis)` (columns are solution vectors of a homogeneous
/// system) for a point passing `check`, which must be a Zariski-open
/// condition cut out by a polynomial of degree at most `grid_degree` in
/// each coefficient. Exhaustive over small prime-field coefficient spaces
/// and over integer grids for the rationals; seeded sampling otherwise.
pub(crate) fn search_solution_space(
    basis: &Matrix,
    grid_degree: usize,
    opts: &IsoOptions,
    check: impl Fn(&[Scalar]) -> bool,
) -> Iso {
    let d = basis.cols();
    if d == 0 {
        return Iso::NotIsomorphic;
    }
    let field = basis.field();
    let combine = |coeffs: &[Scalar]| -> Vec<Scalar> {
        let mut v = vec![field.zero(); basis.rows()];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..basis.rows() {
                v[i] = v[i].add(&c.mul(&basis[(i, k)]));
            }
        }
        v
    };

    let radix = match field {
        Field::Prime(p) => u64::from(p),
        Field::Rational => grid_degree as u64 + 1,
    };
    if let Some(total) = radix
        .checked_pow(d as u32)
        .filter(|&t| t <= opts.enumeration_limit)
    {
        for idx in 1..total {
            let mut coeffs = Vec::with_capacity(d);
            let mut rem = idx;
            for _ in 0..d {
                coeffs.push(field.from_i64((rem % radix) as i64));
                rem /= radix;
            }
            if check(&combine(&coeffs)) {
                return Iso::Isomorphic;
            }
        }
        return Iso::NotIsomorphic;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for k in 0..d {
        let mut coeffs = vec![field.zero(); d];
        coeffs[k] = field.one();
        if check(&combine(&coeffs)) {
            return Iso::Isomorphic;
        }
    }
    for _ in 0..opts.samples {
        let coeffs: Vec<Scalar> = (0..d)
            .map(|_| field.from_i64(rng.gen_range(-8i64..=8)))
            .collect();
        if coeffs.iter().all(Scalar::is_zero) {
            continue;
        }
        if check(&combine(&coeffs)) {
            return Iso::Isomorphic;
        }
    }
    Iso::Unknown
}
