//! Based root data and Weyl group combinatorics with exact rational
//! arithmetic: roots, coroots, dominance orders, length functions, and
//! minimal coset representatives.
//!
//! Coordinates: type A_{n-1} is realized inside GL_n coordinates
//! (coweights are rational n-vectors), types B/C/D in the standard
//! orthogonal coordinates. G2 is realized in coroot-basis coordinates,
//! where both roots and coroots are integral. The isogeny choice selects
//! the coweight lattice inside the fixed ambient space; the root system
//! is shared.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigRational, One, Signed, Zero};
use once_cell::sync::OnceCell;

use crate::error::{KlabError, Result};
use crate::qlin::{self, q, QMat, Q};

/// Which side of the pairing a vector lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LatticeTag {
    Weight,
    Coweight,
}

impl LatticeTag {
    fn name(self) -> &'static str {
        match self {
            LatticeTag::Weight => "weight",
            LatticeTag::Coweight => "coweight",
        }
    }
}

/// Exact rational vector tagged by the lattice it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RatVector {
    pub entries: Vec<Q>,
    pub tag: LatticeTag,
}

impl RatVector {
    pub fn weight(entries: Vec<Q>) -> Self {
        RatVector { entries, tag: LatticeTag::Weight }
    }

    pub fn coweight(entries: Vec<Q>) -> Self {
        RatVector { entries, tag: LatticeTag::Coweight }
    }

    pub fn coweight_i64(entries: &[i64]) -> Self {
        RatVector::coweight(entries.iter().map(|&x| q(x)).collect())
    }

    pub fn weight_i64(entries: &[i64]) -> Self {
        RatVector::weight(entries.iter().map(|&x| q(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        qlin::is_zero_vec(&self.entries)
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.tag, other.tag, "cannot add {} to {}", other.tag.name(), self.tag.name());
        RatVector { entries: qlin::add(&self.entries, &other.entries), tag: self.tag }
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        assert_eq!(self.tag, other.tag, "cannot subtract {} from {}", other.tag.name(), self.tag.name());
        RatVector { entries: qlin::sub(&self.entries, &other.entries), tag: self.tag }
    }

    pub fn neg(&self) -> RatVector {
        RatVector { entries: qlin::neg(&self.entries), tag: self.tag }
    }

    pub fn scale(&self, c: &Q) -> RatVector {
        RatVector { entries: qlin::scale(&self.entries, c), tag: self.tag }
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The pairing between a weight and a coweight (either argument order).
pub fn pair(a: &RatVector, b: &RatVector) -> Result<Q> {
    if a.tag == b.tag {
        return Err(KlabError::TagMismatch { expected: "opposite tags", got: a.tag.name() });
    }
    Ok(qlin::dot(&a.entries, &b.entries))
}

/// Unchecked pairing for internal use where tags are known correct.
pub(crate) fn pairing(a: &RatVector, b: &RatVector) -> Q {
    debug_assert_ne!(a.tag, b.tag);
    qlin::dot(&a.entries, &b.entries)
}

/// Subset of simple-root indices; defines a standard parabolic P and its
/// standard Levi M.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParabolicIndex(pub BTreeSet<usize>);

impl ParabolicIndex {
    pub fn new<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ParabolicIndex(iter.into_iter().collect())
    }

    pub fn borel() -> Self {
        ParabolicIndex(BTreeSet::new())
    }

    pub fn full(rank: usize) -> Self {
        ParabolicIndex((0..rank).collect())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn is_full(&self, rank: usize) -> bool {
        self.0.len() == rank
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &ParabolicIndex) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for ParabolicIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Weyl group element: a reduced word in simple reflections together with
/// its matrices on the coweight and weight sides.
#[derive(Debug, Clone)]
pub struct WeylElement {
    pub word: Vec<usize>,
    /// Action on coweights (ambient coordinates).
    pub matrix: QMat,
    /// Action on weights (ambient coordinates).
    pub weight_matrix: QMat,
    pub length: usize,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}
impl Eq for WeylElement {}

impl WeylElement {
    pub fn apply_coweight(&self, v: &RatVector) -> RatVector {
        assert_eq!(v.tag, LatticeTag::Coweight);
        RatVector::coweight(self.matrix.mul_vec(&v.entries))
    }

    pub fn apply_weight(&self, v: &RatVector) -> RatVector {
        assert_eq!(v.tag, LatticeTag::Weight);
        RatVector::weight(self.weight_matrix.mul_vec(&v.entries))
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}

/// Named Cartan types supported by the builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CartanKind {
    /// Type A_{n-1} in GL_n coordinates.
    A { n: usize },
    B(usize),
    C(usize),
    D(usize),
    G2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isogeny {
    /// GL_n-style lattice (type A only).
    GlStyle,
    SimplyConnected,
    Adjoint,
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isogeny::GlStyle => write!(f, "gl"),
            Isogeny::SimplyConnected => write!(f, "sc"),
            Isogeny::Adjoint => write!(f, "ad"),
        }
    }
}

/// Based root datum with a fixed coweight lattice and all derived data
/// populated at construction.
#[derive(Debug)]
pub struct BasedRootDatum {
    pub dim: usize,
    pub rank: usize,
    pub simple_roots: Vec<RatVector>,
    pub simple_coroots: Vec<RatVector>,
    /// Basis of the coweight lattice X_*(T), columns in ambient coordinates.
    pub colattice: QMat,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub positive_roots: Vec<RatVector>,
    pub positive_coroots: Vec<RatVector>,
    pub fundamental_weights: Vec<RatVector>,
    /// The weight 2*rho (sum of positive roots).
    pub rho2: RatVector,
    /// The coweight 2*rho^vee (sum of positive coroots).
    pub rho2_check: RatVector,
    label: String,
    cartan_inv: QMat,
    colattice_pinv: QMat,
    /// Gram matrix data for the W-invariant form on coweight space:
    /// symmetrizers d_i with (alpha_i^vee, alpha_j^vee) = d_i C[i][j].
    symmetrizers: Vec<Q>,
    weyl: OnceCell<Vec<WeylElement>>,
}

impl BasedRootDatum {
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Construct from a named type and isogeny choice.
    pub fn build(kind: CartanKind, isogeny: Isogeny) -> Result<BasedRootDatum> {
        let (roots, coroots, dim): (Vec<Vec<i64>>, Vec<Vec<i64>>, usize) = match kind {
            CartanKind::A { n } => {
                if n < 1 {
                    return Err(KlabError::InvalidDatum("type A needs n >= 1".into()));
                }
                let mut r = Vec::new();
                for i in 0..n.saturating_sub(1) {
                    let mut v = vec![0i64; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    r.push(v);
                }
                (r.clone(), r, n)
            }
            CartanKind::B(n) => {
                if n < 2 {
                    return Err(KlabError::InvalidDatum("type B needs n >= 2".into()));
                }
                let mut roots = Vec::new();
                let mut coroots = Vec::new();
                for i in 0..n - 1 {
                    let mut v = vec![0i64; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    roots.push(v.clone());
                    coroots.push(v);
                }
                let mut short = vec![0i64; n];
                short[n - 1] = 1;
                roots.push(short.clone());
                let mut cs = short;
                cs[n - 1] = 2;
                coroots.push(cs);
                (roots, coroots, n)
            }
            CartanKind::C(n) => {
                if n < 2 {
                    return Err(KlabError::InvalidDatum("type C needs n >= 2".into()));
                }
                let mut roots = Vec::new();
                let mut coroots = Vec::new();
                for i in 0..n - 1 {
                    let mut v = vec![0i64; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    roots.push(v.clone());
                    coroots.push(v);
                }
                let mut long = vec![0i64; n];
                long[n - 1] = 2;
                roots.push(long.clone());
                let mut cs = long;
                cs[n - 1] = 1;
                coroots.push(cs);
                (roots, coroots, n)
            }
            CartanKind::D(n) => {
                if n < 3 {
                    return Err(KlabError::InvalidDatum("type D needs n >= 3".into()));
                }
                let mut roots = Vec::new();
                for i in 0..n - 1 {
                    let mut v = vec![0i64; n];
                    v[i] = 1;
                    v[i + 1] = -1;
                    roots.push(v);
                }
                let mut v = vec![0i64; n];
                v[n - 2] = 1;
                v[n - 1] = 1;
                roots.push(v);
                (roots.clone(), roots, n)
            }
            CartanKind::G2 => {
                let roots = vec![vec![2, -1], vec![-3, 2]];
                let coroots = vec![vec![1, 0], vec![0, 1]];
                (roots, coroots, 2)
            }
        };

        let colattice = match (kind, isogeny) {
            (CartanKind::A { n }, Isogeny::GlStyle) => QMat::identity(n),
            (CartanKind::A { .. }, Isogeny::SimplyConnected) => {
                QMat::from_cols(&coroots.iter().map(|c| c.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
            }
            (CartanKind::A { n }, Isogeny::Adjoint) => {
                // basis e_i - (1/n) * (1,...,1), i = 1..n-1
                let mut cols = Vec::new();
                for i in 0..n - 1 {
                    let mut v = vec![-qr_usize(1, n); n];
                    v[i] += Q::one();
                    cols.push(v);
                }
                QMat::from_cols(&cols)
            }
            (_, Isogeny::GlStyle) => {
                return Err(KlabError::InvalidDatum("gl-style lattice is only defined for type A".into()))
            }
            (CartanKind::B(_) | CartanKind::D(_), Isogeny::SimplyConnected) => {
                QMat::from_cols(&coroots.iter().map(|c| c.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
            }
            (CartanKind::B(n), Isogeny::Adjoint) => QMat::identity(n),
            (CartanKind::C(n), Isogeny::SimplyConnected) => QMat::identity(n),
            (CartanKind::C(n) | CartanKind::D(n), Isogeny::Adjoint) => {
                let mut cols = Vec::new();
                for i in 0..n - 1 {
                    let mut v = vec![Q::zero(); n];
                    v[i] = Q::one();
                    cols.push(v);
                }
                cols.push(vec![qr_usize(1, 2); n]);
                QMat::from_cols(&cols)
            }
            (CartanKind::G2, _) => QMat::identity(2),
        };

        let label = format!("{kind:?}/{isogeny}");
        Self::from_lists(dim, &roots, &coroots, colattice, label)
    }

    /// Construct from explicit root/coroot lists (integer ambient vectors).
    pub fn from_lists(
        dim: usize,
        roots: &[Vec<i64>],
        coroots: &[Vec<i64>],
        colattice: QMat,
        label: String,
    ) -> Result<BasedRootDatum> {
        if roots.len() != coroots.len() {
            return Err(KlabError::InvalidDatum("coroot/root length mismatch".into()));
        }
        let rank = roots.len();
        if roots.iter().chain(coroots.iter()).any(|v| v.len() != dim) {
            return Err(KlabError::InvalidDatum("vector dimension mismatch".into()));
        }
        let simple_roots: Vec<RatVector> = roots.iter().map(|v| RatVector::weight_i64(v)).collect();
        let simple_coroots: Vec<RatVector> = coroots.iter().map(|v| RatVector::coweight_i64(v)).collect();

        // cartan_matrix[i][j] = <coroot_j, root_i>
        let mut cartan = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                let v = pairing(&simple_roots[i], &simple_coroots[j]);
                if !qlin::is_integral(&v) {
                    return Err(KlabError::InvalidDatum("cartan pairing not integral".into()));
                }
                let vi: i64 = v.to_integer().try_into().map_err(|_| KlabError::InvalidDatum("cartan entry overflow".into()))?;
                cartan[i][j] = vi;
            }
        }
        for i in 0..rank {
            if cartan[i][i] != 2 {
                return Err(KlabError::InvalidDatum(format!("cartan diagonal entry {} != 2", cartan[i][i])));
            }
            for j in 0..rank {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(KlabError::InvalidDatum("positive off-diagonal cartan entry".into()));
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(KlabError::InvalidDatum("asymmetric zero pattern in cartan matrix".into()));
                    }
                }
            }
        }
        let symmetrizers = symmetrize(&cartan)?;
        check_positive_definite(&cartan, &symmetrizers)?;

        // Generate the full root system by reflection closure.
        let refl_w = |i: usize, r: &RatVector| -> RatVector {
            let c = pairing(r, &simple_coroots[i]);
            r.sub(&simple_roots[i].scale(&c))
        };
        let refl_c = |i: usize, r: &RatVector| -> RatVector {
            let c = pairing(&simple_roots[i], r);
            r.sub(&simple_coroots[i].scale(&c))
        };
        let mut seen: BTreeSet<Vec<Q>> = BTreeSet::new();
        let mut pairs: Vec<(RatVector, RatVector)> = Vec::new();
        let mut queue: Vec<(RatVector, RatVector)> =
            simple_roots.iter().cloned().zip(simple_coroots.iter().cloned()).collect();
        while let Some((r, rc)) = queue.pop() {
            if !seen.insert(r.entries.clone()) {
                continue;
            }
            pairs.push((r.clone(), rc.clone()));
            if pairs.len() > 600 {
                return Err(KlabError::InvalidDatum("root system is not of finite type".into()));
            }
            for i in 0..rank {
                queue.push((refl_w(i, &r), refl_c(i, &rc)));
            }
        }
        // positivity: nonnegative coefficients over the simple roots
        let root_mat = QMat::from_cols(
            &simple_roots.iter().map(|r| r.entries.clone()).collect::<Vec<_>>(),
        );
        let mut positive: Vec<(RatVector, RatVector)> = Vec::new();
        for (r, rc) in &pairs {
            let coeff = root_mat
                .solve(&r.entries)
                .ok_or_else(|| KlabError::InvalidDatum("root outside simple-root span".into()))?;
            if coeff.iter().all(|c| !c.is_negative()) {
                positive.push((r.clone(), rc.clone()));
            }
        }
        if positive.len() * 2 != pairs.len() {
            return Err(KlabError::InvalidDatum("root system is not reduced/symmetric".into()));
        }
        positive.sort_by(|a, b| a.0.entries.cmp(&b.0.entries));
        let positive_roots: Vec<RatVector> = positive.iter().map(|p| p.0.clone()).collect();
        let positive_coroots: Vec<RatVector> = positive.iter().map(|p| p.1.clone()).collect();

        let rho2 = positive_roots
            .iter()
            .fold(RatVector::weight(vec![Q::zero(); dim]), |acc, r| acc.add(r));
        let rho2_check = positive_coroots
            .iter()
            .fold(RatVector::coweight(vec![Q::zero(); dim]), |acc, r| acc.add(r));

        // fundamental weights inside the span of the simple roots
        let cartan_q = QMat::from_rows(
            &cartan.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>(),
        );
        let cartan_inv = cartan_q
            .inverse()
            .ok_or_else(|| KlabError::InvalidDatum("singular cartan matrix".into()))?;
        // omega_j = sum_k c_k alpha_k with sum_k c_k C[k][i] = delta_ij
        let cartan_t_inv = cartan_q.transpose().inverse().unwrap();
        let mut fundamental_weights = Vec::new();
        for j in 0..rank {
            let mut e = vec![Q::zero(); rank];
            e[j] = Q::one();
            let c = cartan_t_inv.mul_vec(&e);
            let mut w = RatVector::weight(vec![Q::zero(); dim]);
            for (k, ck) in c.iter().enumerate() {
                w = w.add(&simple_roots[k].scale(ck));
            }
            fundamental_weights.push(w);
        }

        // pseudo-inverse of the colattice basis for integrality tests:
        // columns are independent, so (B^T B)^{-1} B^T works.
        let bt = colattice.transpose();
        let btb = bt.mul(&colattice);
        let btb_inv = btb
            .inverse()
            .ok_or_else(|| KlabError::InvalidDatum("colattice basis is not independent".into()))?;
        let colattice_pinv = btb_inv.mul(&bt);

        // coroots must be integral in the colattice
        let datum = BasedRootDatum {
            dim,
            rank,
            simple_roots,
            simple_coroots,
            colattice,
            cartan_matrix: cartan,
            positive_roots,
            positive_coroots,
            fundamental_weights,
            rho2,
            rho2_check,
            label,
            cartan_inv,
            colattice_pinv,
            symmetrizers,
            weyl: OnceCell::new(),
        };
        for c in &datum.simple_coroots {
            if datum.colattice_coords(c).is_none() {
                return Err(KlabError::InvalidDatum("simple coroot not in coweight lattice".into()));
            }
        }
        for j in 0..rank {
            for i in 0..rank {
                let p = pairing(&datum.fundamental_weights[j], &datum.simple_coroots[i]);
                let expect = if i == j { Q::one() } else { Q::zero() };
                assert_eq!(p, expect, "fundamental weight pairing failed");
            }
        }
        Ok(datum)
    }

    /// Integer coordinates of a coweight in the colattice basis, when the
    /// vector lies in the lattice; `None` otherwise.
    pub fn colattice_coords(&self, v: &RatVector) -> Option<Vec<num::BigInt>> {
        assert_eq!(v.tag, LatticeTag::Coweight);
        let x = self.colattice_pinv.mul_vec(&v.entries);
        // verify both consistency (v in the span) and integrality
        let back = self.colattice.mul_vec(&x);
        if back != v.entries {
            return None;
        }
        if !x.iter().all(qlin::is_integral) {
            return None;
        }
        Some(x.iter().map(|c| c.to_integer()).collect())
    }

    /// Rational coordinates in the colattice basis (`None` if outside the span).
    pub fn colattice_coords_q(&self, v: &RatVector) -> Option<Vec<Q>> {
        let x = self.colattice_pinv.mul_vec(&v.entries);
        let back = self.colattice.mul_vec(&x);
        if back != v.entries {
            return None;
        }
        Some(x)
    }

    pub fn coweight_from_coords(&self, coords: &[Q]) -> RatVector {
        RatVector::coweight(self.colattice.mul_vec(coords))
    }

    pub fn lattice_rank(&self) -> usize {
        self.colattice.cols
    }

    pub fn is_integral_coweight(&self, v: &RatVector) -> bool {
        self.colattice_coords(v).is_some()
    }

    /// Simple reflection acting on a coweight.
    pub fn reflect_coweight(&self, i: usize, v: &RatVector) -> RatVector {
        let c = pairing(&self.simple_roots[i], v);
        v.sub(&self.simple_coroots[i].scale(&c))
    }

    /// Simple reflection acting on a weight.
    pub fn reflect_weight(&self, i: usize, v: &RatVector) -> RatVector {
        let c = pairing(v, &self.simple_coroots[i]);
        v.sub(&self.simple_roots[i].scale(&c))
    }

    pub fn is_dominant(&self, v: &RatVector) -> bool {
        self.simple_roots.iter().all(|a| !pairing(a, v).is_negative())
    }

    pub fn is_dominant_for(&self, v: &RatVector, levi: &ParabolicIndex) -> bool {
        levi.iter().all(|i| !pairing(&self.simple_roots[i], v).is_negative())
    }

    fn simple_reflection(&self, i: usize) -> WeylElement {
        let mut mat = QMat::identity(self.dim);
        let mut wmat = QMat::identity(self.dim);
        for j in 0..self.dim {
            let mut e = vec![Q::zero(); self.dim];
            e[j] = Q::one();
            let col = self.reflect_coweight(i, &RatVector::coweight(e.clone()));
            for k in 0..self.dim {
                mat[(k, j)] = col.entries[k].clone();
            }
            let wcol = self.reflect_weight(i, &RatVector::weight(e));
            for k in 0..self.dim {
                wmat[(k, j)] = wcol.entries[k].clone();
            }
        }
        let mut w = WeylElement { word: vec![i], matrix: mat, weight_matrix: wmat, length: 0 };
        w.length = self.length_of(&w);
        w
    }

    /// Number of positive roots sent to negative roots.
    pub fn length_of(&self, w: &WeylElement) -> usize {
        let positives: BTreeSet<Vec<Q>> =
            self.positive_roots.iter().map(|r| r.entries.clone()).collect();
        self.positive_roots
            .iter()
            .filter(|r| {
                let img = w.apply_weight(r);
                positives.contains(&qlin::neg(&img.entries))
            })
            .count()
    }

    pub fn identity_element(&self) -> WeylElement {
        WeylElement {
            word: vec![],
            matrix: QMat::identity(self.dim),
            weight_matrix: QMat::identity(self.dim),
            length: 0,
        }
    }

    pub fn compose(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        // (a*b) acts as a after b
        let mut w = WeylElement {
            word: b.word.iter().chain(a.word.iter()).copied().collect(),
            matrix: a.matrix.mul(&b.matrix),
            weight_matrix: a.weight_matrix.mul(&b.weight_matrix),
            length: 0,
        };
        w.length = self.length_of(&w);
        w
    }

    /// The full Weyl group, generated once and cached, sorted by
    /// (length, word) for deterministic iteration.
    pub fn weyl_group(&self) -> &[WeylElement] {
        self.weyl.get_or_init(|| {
            let gens: Vec<WeylElement> = (0..self.rank).map(|i| self.simple_reflection(i)).collect();
            let mut seen: BTreeSet<Vec<Q>> = BTreeSet::new();
            let mut out: Vec<WeylElement> = Vec::new();
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(self.identity_element());
            while let Some(w) = queue.pop_front() {
                if !seen.insert(w.matrix.data.clone()) {
                    continue;
                }
                for g in &gens {
                    let next = self.compose(g, &w);
                    if !seen.contains(&next.matrix.data) {
                        queue.push_back(next);
                    }
                }
                out.push(w);
            }
            out.sort_by(|a, b| a.length.cmp(&b.length).then(a.word.cmp(&b.word)));
            out
        })
    }

    /// The longest element.
    pub fn longest_element(&self) -> &WeylElement {
        self.weyl_group().last().expect("nonempty weyl group")
    }

    /// Dominant representative together with a minimal-length element
    /// sending the input to it.
    pub fn dominant_representative(&self, v: &RatVector) -> (RatVector, WeylElement) {
        assert_eq!(v.tag, LatticeTag::Coweight);
        let mut x = v.clone();
        let mut w = self.identity_element();
        loop {
            let mut moved = false;
            for i in 0..self.rank {
                if pairing(&self.simple_roots[i], &x).is_negative() {
                    x = self.reflect_coweight(i, &x);
                    w = self.compose(&self.simple_reflection(i), &w);
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        (x, w)
    }

    /// v1 <= v2 in the dominance order. `integral` demands nonnegative
    /// integer coefficients over the simple coroots, `rational` only
    /// nonnegativity.
    pub fn dominance_leq(&self, v1: &RatVector, v2: &RatVector, integral: bool) -> Result<bool> {
        if v1.tag != LatticeTag::Coweight || v2.tag != LatticeTag::Coweight {
            return Err(KlabError::TagMismatch { expected: "coweight", got: "weight" });
        }
        let diff = v2.sub(v1);
        if self.rank == 0 {
            return Ok(diff.is_zero());
        }
        let mat = QMat::from_cols(
            &self.simple_coroots.iter().map(|c| c.entries.clone()).collect::<Vec<_>>(),
        );
        let Some(coeff) = mat.solve(&diff.entries) else {
            return Ok(false);
        };
        if mat.mul_vec(&coeff) != diff.entries {
            return Ok(false);
        }
        Ok(coeff.iter().all(|c| {
            !c.is_negative() && (!integral || qlin::is_integral(c))
        }))
    }

    /// The involution x -> w0(-x) on dominant vectors.
    pub fn star_involution(&self, v: &RatVector) -> RatVector {
        self.dominant_representative(&v.neg()).0
    }

    /// Minimal-length double coset representatives ^P W ^Q.
    pub fn coset_reps(&self, p: &ParabolicIndex, qx: &ParabolicIndex) -> Vec<WeylElement> {
        let mut reps: Vec<WeylElement> = Vec::new();
        let mut seen: BTreeSet<Vec<Q>> = BTreeSet::new();
        for w in self.weyl_group() {
            let mut cur = w.clone();
            loop {
                let mut moved = false;
                for i in p.iter() {
                    let cand = self.compose(&self.simple_reflection(i), &cur);
                    if cand.length < cur.length {
                        cur = cand;
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                for j in qx.iter() {
                    let cand = self.compose(&cur, &self.simple_reflection(j));
                    if cand.length < cur.length {
                        cur = cand;
                        moved = true;
                        break;
                    }
                }
                if !moved {
                    break;
                }
            }
            if seen.insert(cur.matrix.data.clone()) {
                reps.push(cur);
            }
        }
        reps.sort_by(|a, b| a.length.cmp(&b.length).then(a.word.cmp(&b.word)));
        reps
    }

    /// Projection of a coweight onto the central directions of the standard
    /// Levi M (the subspace pairing to zero with every simple root of M),
    /// along the span of M's simple coroots.
    pub fn central_projection(&self, levi: &ParabolicIndex, v: &RatVector) -> RatVector {
        assert_eq!(v.tag, LatticeTag::Coweight);
        let idx: Vec<usize> = levi.iter().collect();
        if idx.is_empty() {
            return v.clone();
        }
        // solve sum_i a_i <coroot_i, alpha_j> = <v, alpha_j> for j in M
        let m = idx.len();
        let mut sys = QMat::zero(m, m);
        let mut rhs = vec![Q::zero(); m];
        for (jj, &j) in idx.iter().enumerate() {
            for (ii, &i) in idx.iter().enumerate() {
                sys[(jj, ii)] = q(self.cartan_matrix[j][i]);
            }
            rhs[jj] = pairing(&self.simple_roots[j], v);
        }
        let a = sys.solve(&rhs).expect("cartan block is invertible");
        let mut out = v.clone();
        for (ii, &i) in idx.iter().enumerate() {
            out = out.sub(&self.simple_coroots[i].scale(&a[ii]));
        }
        out
    }

    /// Standard Levi whose roots annihilate the (dominant) vector.
    pub fn centralizer_levi(&self, v: &RatVector) -> ParabolicIndex {
        ParabolicIndex::new(
            (0..self.rank).filter(|&i| pairing(&self.simple_roots[i], v).is_zero()),
        )
    }

    /// W-invariant inner product on the coweight space.
    pub fn inner(&self, x: &RatVector, y: &RatVector) -> Q {
        assert_eq!(x.tag, LatticeTag::Coweight);
        assert_eq!(y.tag, LatticeTag::Coweight);
        // decompose into coroot-span + central parts
        let a = self.span_coords(x);
        let b = self.span_coords(y);
        let mut span_part = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                span_part += &a[i] * &b[j] * &self.symmetrizers[i] * q(self.cartan_matrix[i][j]);
            }
        }
        let xc = self.central_part(x, &a);
        let yc = self.central_part(y, &b);
        span_part + qlin::dot(&xc, &yc)
    }

    fn span_coords(&self, v: &RatVector) -> Vec<Q> {
        // a = C^{-1} (<v, alpha_j>)_j
        let p: Vec<Q> = self.simple_roots.iter().map(|a| pairing(a, v)).collect();
        self.cartan_inv.mul_vec(&p)
    }

    fn central_part(&self, v: &RatVector, a: &[Q]) -> Vec<Q> {
        let mut out = v.entries.clone();
        for i in 0..self.rank {
            let sub = qlin::scale(&self.simple_coroots[i].entries, &a[i]);
            out = qlin::sub(&out, &sub);
        }
        out
    }

    /// Positive coroots lying in the Levi M (all simple-root support in M).
    pub fn positive_coroots_of_levi(&self, levi: &ParabolicIndex) -> Vec<RatVector> {
        self.roots_in_levi(levi).into_iter().map(|i| self.positive_coroots[i].clone()).collect()
    }

    /// Positive roots lying in the Levi M.
    pub fn positive_roots_of_levi(&self, levi: &ParabolicIndex) -> Vec<RatVector> {
        self.roots_in_levi(levi).into_iter().map(|i| self.positive_roots[i].clone()).collect()
    }

    fn roots_in_levi(&self, levi: &ParabolicIndex) -> Vec<usize> {
        let root_mat = QMat::from_cols(
            &self.simple_roots.iter().map(|r| r.entries.clone()).collect::<Vec<_>>(),
        );
        let mut out = Vec::new();
        for (k, r) in self.positive_roots.iter().enumerate() {
            let coeff = root_mat.solve(&r.entries).expect("root in simple span");
            let support_ok = coeff
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || levi.contains(i));
            if support_ok {
                out.push(k);
            }
        }
        out
    }

    /// 2*rho_M: sum of the positive roots of the Levi.
    pub fn rho2_of_levi(&self, levi: &ParabolicIndex) -> RatVector {
        self.positive_roots_of_levi(levi)
            .iter()
            .fold(RatVector::weight(vec![Q::zero(); self.dim]), |acc, r| acc.add(r))
    }
}

fn qr_usize(n: usize, d: usize) -> Q {
    BigRational::new(num::BigInt::from(n), num::BigInt::from(d))
}

/// Symmetrizers d_i > 0 with d_i C[i][j] = d_j C[j][i].
fn symmetrize(cartan: &[Vec<i64>]) -> Result<Vec<Q>> {
    let rank = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; rank];
    for start in 0..rank {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().unwrap();
            for j in 0..rank {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                let dj = &di * q(cartan[i][j]) / q(cartan[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(old) => {
                        if *old != dj {
                            return Err(KlabError::InvalidDatum("cartan matrix is not symmetrizable".into()));
                        }
                    }
                }
            }
        }
    }
    Ok(d.into_iter().map(Option::unwrap).collect())
}

/// Positive-definiteness of the symmetrized Cartan matrix (finite type).
fn check_positive_definite(cartan: &[Vec<i64>], d: &[Q]) -> Result<()> {
    let rank = cartan.len();
    let mut s = QMat::zero(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            s[(i, j)] = &d[i] * q(cartan[i][j]);
        }
    }
    // leading principal minors
    for k in 1..=rank {
        let mut sub = QMat::zero(k, k);
        for i in 0..k {
            for j in 0..k {
                sub[(i, j)] = s[(i, j)].clone();
            }
        }
        if det(&sub) <= Q::zero() {
            return Err(KlabError::InvalidDatum("cartan matrix is not of finite type".into()));
        }
    }
    Ok(())
}

fn det(m: &QMat) -> Q {
    let n = m.rows;
    let mut a = m.clone();
    let mut sign = Q::one();
    let mut result = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            for j in 0..n {
                a.data.swap(c * n + j, p * n + j);
            }
            sign = -sign;
        }
        result *= a[(c, c)].clone();
        let inv = a[(c, c)].recip();
        for i in c + 1..n {
            let f = &a[(i, c)] * &inv;
            for j in c..n {
                let sub = &f * &a[(c, j)];
                a[(i, j)] -= sub;
            }
        }
    }
    sign * result
}
