//! Classification engine.
//!
//! An [`AlgebraHandle`] picks a carrier (the whole 8-dimensional space or
//! one of its subalgebras) and a bilinear product. [`Algebra`] turns it into
//! a table of structure constants, and every identity is then decided by an
//! exact sweep over basis tuples: bilinearity makes the basis check
//! equivalent to the identity for all elements.

mod biquaternion;
mod classify;
pub mod tables;

pub use biquaternion::{
    biquaternion_decompose, biquaternion_recompose, verify_biquaternion_rows, TensorRow,
};
pub use classify::{
    classify, classify_with_norm, claimed_octonionic_label, mismatch_witness, ClassifyCell,
    Flags, PropertyReport,
};

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::clifford::{Multivector, Signature, Subalgebra};
use crate::error::{Error, Result};
use crate::involutions::{polarize, NormId};
use crate::linalg::{inertia, solve_affine, AffineSolution, EchelonBasis, Matrix};
use crate::products::{Product, ProductId, SplitInterpretation, TauVariant};
use crate::scalar::QS3Scalar;

pub type Vector = Vec<QS3Scalar>;

/// The subspace the product is restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Carrier {
    Full,
    Rot,
    Ps,
    /// The scalar line, for the one-dimensional algebras.
    Scalar,
}

impl Carrier {
    pub fn indices(self) -> &'static [usize] {
        match self {
            Carrier::Full => &[0, 1, 2, 3, 4, 5, 6, 7],
            Carrier::Rot => Subalgebra::Rot.indices(),
            Carrier::Ps => Subalgebra::Ps.indices(),
            Carrier::Scalar => &[0],
        }
    }

    pub fn dim(self) -> usize {
        self.indices().len()
    }

    /// The norm this carrier is classified under by default.
    pub fn default_norm(self) -> NormId {
        match self {
            Carrier::Full => NormId::NStar,
            Carrier::Rot => NormId::NTilde,
            Carrier::Ps | Carrier::Scalar => NormId::NBar,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Carrier::Full => "full",
            Carrier::Rot => "Rot",
            Carrier::Ps => "Ps",
            Carrier::Scalar => "R",
        }
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraHandle {
    pub sig: Signature,
    pub product: ProductId,
    pub tau: TauVariant,
    pub split: SplitInterpretation,
    pub carrier: Carrier,
}

impl AlgebraHandle {
    /// Corrected τ, even/odd split, carrier implied by the product.
    pub fn new(sig: Signature, product: ProductId) -> Self {
        let carrier = match product.domain() {
            Some(Subalgebra::Rot) => Carrier::Rot,
            Some(Subalgebra::Ps) => Carrier::Ps,
            None => Carrier::Full,
        };
        Self {
            sig,
            product,
            tau: TauVariant::Corrected,
            split: SplitInterpretation::EvenOdd,
            carrier,
        }
    }

    pub fn with_carrier(mut self, carrier: Carrier) -> Self {
        self.carrier = carrier;
        self
    }

    pub fn with_tau(mut self, tau: TauVariant) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_split(mut self, split: SplitInterpretation) -> Self {
        self.split = split;
        self
    }

    pub fn bilinear(&self) -> Product {
        Product::new(self.product, self.tau.clone(), self.split)
    }
}

impl fmt::Display for AlgebraHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.sig, self.product)?;
        if self.carrier != Carrier::Full && self.product.domain().is_none() {
            write!(f, " on {}", self.carrier.name())?;
        }
        if self.product.uses_tau() {
            write!(f, " tau={}", self.tau)?;
        }
        if self.split != SplitInterpretation::EvenOdd {
            write!(f, " split={}", self.split.name())?;
        }
        Ok(())
    }
}

/// A failed identity, with the basis inputs and both sides in canonical
/// text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub identity: String,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails { witness: Witness },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness } => Some(witness),
        }
    }

    fn from_first(w: Option<Witness>) -> Self {
        match w {
            None => Verdict::Holds,
            Some(witness) => Verdict::Fails { witness },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flag {
    Commutative,
    Associative,
    Alternative,
    Flexible,
}

impl Flag {
    pub const ALL: [Flag; 4] = [
        Flag::Commutative,
        Flag::Associative,
        Flag::Alternative,
        Flag::Flexible,
    ];
}

/// Quadratic form on a carrier: its polarization matrix and inertia.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub polar: Matrix,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl QuadraticForm {
    fn from_polar(polar: Matrix) -> Self {
        let (n_plus, n_minus, _) = inertia(&polar);
        Self {
            polar,
            n_plus,
            n_minus,
        }
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.n_plus, self.n_minus)
    }
}

/// Structure constants of a product on a carrier: `table[i][j]` holds the
/// carrier coordinates of `b_i ∘ b_j`.
#[derive(Clone, Debug)]
pub struct Algebra {
    handle: AlgebraHandle,
    product: Product,
    table: Vec<Vec<Vector>>,
}

impl Algebra {
    pub fn new(handle: &AlgebraHandle) -> Result<Self> {
        let product = handle.bilinear();
        let idx = handle.carrier.indices();
        let mut table = Vec::with_capacity(idx.len());
        for &i in idx {
            let mut row = Vec::with_capacity(idx.len());
            for &j in idx {
                let p = product.apply(
                    &Multivector::basis(handle.sig, i),
                    &Multivector::basis(handle.sig, j),
                )?;
                for k in 0..8 {
                    if !idx.contains(&k) && !p.coord(k).is_zero() {
                        return Err(Error::NotClosed(format!(
                            "{} has {} component outside {}",
                            p,
                            crate::clifford::Blade::from_index(k),
                            handle.carrier.name()
                        )));
                    }
                }
                row.push(idx.iter().map(|&k| p.coord(k).clone()).collect());
            }
            table.push(row);
        }
        Ok(Self {
            handle: handle.clone(),
            product,
            table,
        })
    }

    /// A derived product given directly by a closure on multivectors.
    pub fn from_fn(
        handle: &AlgebraHandle,
        f: impl Fn(&Multivector, &Multivector) -> Result<Multivector>,
    ) -> Result<Self> {
        let idx = handle.carrier.indices();
        let mut table = Vec::new();
        for &i in idx {
            let mut row = Vec::new();
            for &j in idx {
                let p = f(
                    &Multivector::basis(handle.sig, i),
                    &Multivector::basis(handle.sig, j),
                )?;
                row.push(idx.iter().map(|&k| p.coord(k).clone()).collect());
            }
            table.push(row);
        }
        Ok(Self {
            handle: handle.clone(),
            product: handle.bilinear(),
            table,
        })
    }

    pub fn handle(&self) -> &AlgebraHandle {
        &self.handle
    }

    pub fn product(&self) -> &Product {
        &self.product
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn sig(&self) -> Signature {
        self.handle.sig
    }

    pub fn structure(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn unit_vector(&self, i: usize) -> Vector {
        let mut v = vec![QS3Scalar::zero(); self.dim()];
        v[i] = QS3Scalar::one();
        v
    }

    pub fn to_multivector(&self, v: &[QS3Scalar]) -> Multivector {
        let mut m = Multivector::zero(self.sig());
        for (&k, c) in self.handle.carrier.indices().iter().zip(v) {
            m.set_coord(k, c.clone());
        }
        m
    }

    pub fn from_multivector(&self, m: &Multivector) -> Result<Vector> {
        let idx = self.handle.carrier.indices();
        for k in 0..8 {
            if !idx.contains(&k) && !m.coord(k).is_zero() {
                return Err(Error::Invalid(format!(
                    "{m} is not in the {} carrier",
                    self.handle.carrier.name()
                )));
            }
        }
        Ok(idx.iter().map(|&k| m.coord(k).clone()).collect())
    }

    fn text(&self, v: &[QS3Scalar]) -> String {
        self.to_multivector(v).to_string()
    }

    fn basis_text(&self, i: usize) -> String {
        self.text(&self.unit_vector(i))
    }

    pub fn mul(&self, x: &[QS3Scalar], y: &[QS3Scalar]) -> Vector {
        let n = self.dim();
        let mut out = vec![QS3Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// `(b_i ∘ b_j) ∘ b_k - b_i ∘ (b_j ∘ b_k)`.
    fn associator(&self, i: usize, j: usize, k: usize) -> Vector {
        let l = self.mul(&self.table[i][j], &self.unit_vector(k));
        let r = self.mul(&self.unit_vector(i), &self.table[j][k]);
        sub(&l, &r)
    }

    /// Polarization matrix of a named norm on the carrier basis.
    pub fn gram(&self, norm: NormId) -> Result<Matrix> {
        let n = self.dim();
        let basis: Vec<Multivector> = (0..n).map(|i| self.to_multivector(&self.unit_vector(i))).collect();
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = polarize(norm, &basis[i], &basis[j])?;
                g[(i, j)] = v.clone();
                g[(j, i)] = v;
            }
        }
        Ok(g)
    }

    pub fn norm_form(&self, norm: NormId) -> Result<QuadraticForm> {
        Ok(QuadraticForm::from_polar(self.gram(norm)?))
    }

    /// Exact composition check through the fully linearized identity
    /// `B(b_i b_k, b_j b_l) + B(b_i b_l, b_j b_k) = B(b_i, b_j) B(b_k, b_l)`
    /// over all basis quadruples.
    pub fn verify_composition(&self, norm: NormId) -> Result<Verdict> {
        let g = self.gram(norm)?;
        let n = self.dim();
        let gp: Vec<Vec<Vector>> = (0..n)
            .map(|i| (0..n).map(|k| g.mul_vec(&self.table[i][k])).collect())
            .collect();
        let first = (0..n.pow(4)).into_par_iter().find_map_first(|q| {
            let (i, j, k, l) = (q / (n * n * n), q / (n * n) % n, q / n % n, q % n);
            let lhs = &dot(&self.table[i][k], &gp[j][l]) + &dot(&self.table[i][l], &gp[j][k]);
            let rhs = &g[(i, j)] * &g[(k, l)];
            (lhs != rhs).then(|| Witness {
                identity: format!(
                    "<xi*yk, xj*yl> + <xi*yl, xj*yk> = <xi, xj><yk, yl> ({norm})"
                ),
                inputs: [i, j, k, l].iter().map(|&b| self.basis_text(b)).collect(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        });
        Ok(Verdict::from_first(first))
    }

    /// Polarized `x∘(y∘x) = n(x) y` and `(x∘y)∘x = n(x) y`.
    pub fn symmetric_composition_check(&self, norm: NormId) -> Result<Verdict> {
        let g = self.gram(norm)?;
        let n = self.dim();
        let first = (0..n * n * n).into_par_iter().find_map_first(|t| {
            let (a, b, y) = (t / (n * n), t / n % n, t % n);
            let ey = self.unit_vector(y);
            let rhs: Vector = ey.iter().map(|c| c * &g[(a, b)]).collect();
            let left = add(
                &self.mul(&self.unit_vector(a), &self.table[y][b]),
                &self.mul(&self.unit_vector(b), &self.table[y][a]),
            );
            let right = add(
                &self.mul(&self.table[a][y], &self.unit_vector(b)),
                &self.mul(&self.table[b][y], &self.unit_vector(a)),
            );
            let inputs = || [a, b, y].iter().map(|&i| self.basis_text(i)).collect();
            if left != rhs {
                Some(Witness {
                    identity: format!("x*(y*x') + x'*(y*x) = <x,x'> y ({norm})"),
                    inputs: inputs(),
                    lhs: self.text(&left),
                    rhs: self.text(&rhs),
                })
            } else if right != rhs {
                Some(Witness {
                    identity: format!("(x*y)*x' + (x'*y)*x = <x,x'> y ({norm})"),
                    inputs: inputs(),
                    lhs: self.text(&right),
                    rhs: self.text(&rhs),
                })
            } else {
                None
            }
        });
        Ok(Verdict::from_first(first))
    }

    pub fn check_flag(&self, flag: Flag) -> Verdict {
        let n = self.dim();
        let zero = vec![QS3Scalar::zero(); n];
        let fail = |identity: &str, idx: &[usize], lhs: &Vector, rhs: &Vector| Witness {
            identity: identity.to_string(),
            inputs: idx.iter().map(|&i| self.basis_text(i)).collect(),
            lhs: self.text(lhs),
            rhs: self.text(rhs),
        };
        let first = match flag {
            Flag::Commutative => (0..n * n).find_map(|t| {
                let (a, b) = (t / n, t % n);
                (self.table[a][b] != self.table[b][a])
                    .then(|| fail("x*y = y*x", &[a, b], &self.table[a][b], &self.table[b][a]))
            }),
            _ => (0..n * n * n).into_par_iter().find_map_first(|t| {
                let (a, b, c) = (t / (n * n), t / n % n, t % n);
                match flag {
                    Flag::Associative => {
                        let l = self.mul(&self.table[a][b], &self.unit_vector(c));
                        let r = self.mul(&self.unit_vector(a), &self.table[b][c]);
                        (l != r).then(|| fail("(x*y)*z = x*(y*z)", &[a, b, c], &l, &r))
                    }
                    Flag::Alternative => {
                        let left = add(&self.associator(a, b, c), &self.associator(b, a, c));
                        if left != zero {
                            return Some(fail("[a,b,y] + [b,a,y] = 0", &[a, b, c], &left, &zero));
                        }
                        let right = add(&self.associator(c, a, b), &self.associator(c, b, a));
                        (right != zero)
                            .then(|| fail("[y,a,b] + [y,b,a] = 0", &[a, b, c], &right, &zero))
                    }
                    Flag::Flexible => {
                        let v = add(&self.associator(a, b, c), &self.associator(c, b, a));
                        (v != zero).then(|| fail("[a,y,b] + [b,y,a] = 0", &[a, b, c], &v, &zero))
                    }
                    Flag::Commutative => unreachable!(),
                }
            }),
        };
        Verdict::from_first(first)
    }

    /// The unique two-sided unit, `None` if the system is inconsistent.
    pub fn find_unit(&self) -> Result<Option<Vector>> {
        let n = self.dim();
        let mut a = Matrix::zeros(0, 0);
        let mut rhs = Vec::new();
        for j in 0..n {
            for k in 0..n {
                let target = if j == k { QS3Scalar::one() } else { QS3Scalar::zero() };
                a.push_row((0..n).map(|i| self.table[i][j][k].clone()).collect());
                rhs.push(target.clone());
                a.push_row((0..n).map(|i| self.table[j][i][k].clone()).collect());
                rhs.push(target);
            }
        }
        match solve_affine(&a, &rhs) {
            AffineSolution::Inconsistent => Ok(None),
            AffineSolution::Unique(u) => Ok(Some(u)),
            AffineSolution::Family { directions, .. } => Err(Error::NonUniqueUnit(directions.len())),
        }
    }

    /// Elements commuting with every basis element.
    pub fn commuting_subspace(&self) -> Vec<Vector> {
        let n = self.dim();
        let mut a = Matrix::zeros(0, 0);
        for j in 0..n {
            for k in 0..n {
                a.push_row(
                    (0..n)
                        .map(|i| &self.table[i][j][k] - &self.table[j][i][k])
                        .collect(),
                );
            }
        }
        a.nullspace()
    }

    /// A paraunit: an idempotent commuting with everything whose left
    /// multiplication is an involution other than the identity.
    ///
    /// Candidates are the directions of the commuting subspace, each scaled
    /// to an idempotent when its square is parallel to it.
    pub fn find_paraunit(&self) -> Option<Vector> {
        self.commuting_subspace()
            .into_iter()
            .filter_map(|v| self.scale_to_idempotent(&v))
            .find(|u| self.is_paraunit(u))
    }

    fn scale_to_idempotent(&self, v: &[QS3Scalar]) -> Option<Vector> {
        let sq = self.mul(v, v);
        let k = v.iter().position(|c| !c.is_zero())?;
        let mu = sq[k].checked_div(&v[k]).ok()?;
        if mu.is_zero() {
            return None;
        }
        let parallel = sq.iter().zip(v).all(|(s, c)| *s == &mu * c);
        if !parallel {
            return None;
        }
        let inv = mu.recip().ok()?;
        Some(v.iter().map(|c| c * &inv).collect())
    }

    pub fn is_paraunit(&self, u: &[QS3Scalar]) -> bool {
        let n = self.dim();
        if self.mul(u, u) != u {
            return false;
        }
        let mut moves_something = false;
        for i in 0..n {
            let e = self.unit_vector(i);
            let ue = self.mul(u, &e);
            if ue != self.mul(&e, u) || self.mul(u, &ue) != e {
                return false;
            }
            moves_something |= ue != e;
        }
        moves_something
    }

    /// First nonzero idempotent among: the scalar 1, the unit, the paraunit,
    /// scaled basis directions.
    pub fn idempotent_witness(&self) -> Option<Vector> {
        let n = self.dim();
        let one = self.unit_vector(0);
        if self.mul(&one, &one) == one {
            return Some(one);
        }
        if let Ok(Some(u)) = self.find_unit() {
            return Some(u);
        }
        if let Some(p) = self.find_paraunit() {
            return Some(p);
        }
        (0..n).find_map(|i| self.scale_to_idempotent(&self.unit_vector(i)))
    }

    /// Dimension of the derivation algebra, by exact rank of the
    /// `n³ × n²` linear system `D(b_i b_j) = D(b_i) b_j + b_i D(b_j)`.
    pub fn derivation_dimension(&self) -> usize {
        let n = self.dim();
        let var = |p: usize, q: usize| p * n + q;
        let rows: Vec<Vector> = (0..n * n)
            .into_par_iter()
            .flat_map_iter(|t| {
                let (i, j) = (t / n, t % n);
                (0..n).map(move |k| {
                    let mut row = vec![QS3Scalar::zero(); n * n];
                    for (m, c) in self.table[i][j].iter().enumerate() {
                        if !c.is_zero() {
                            row[var(k, m)] += c;
                        }
                    }
                    for p in 0..n {
                        let a = &self.table[p][j][k];
                        if !a.is_zero() {
                            row[var(p, i)] -= a;
                        }
                        let b = &self.table[i][p][k];
                        if !b.is_zero() {
                            row[var(p, j)] -= b;
                        }
                    }
                    row
                })
            })
            .collect();
        let mut basis = EchelonBasis::new();
        for row in rows {
            if basis.rank() == n * n {
                break;
            }
            basis.insert(row);
        }
        n * n - basis.rank()
    }

    /// Norm forced by a unit `u`: `x∘x = t(x) x - n(x) u`.
    pub fn intrinsic_norm_from_unit(&self, u: &[QS3Scalar]) -> Result<QuadraticForm> {
        let n = self.dim();
        let k = u
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Invalid("zero unit".into()))?;
        let two = QS3Scalar::from_int(2);
        let mut trace = vec![QS3Scalar::zero(); n];
        for i in (0..n).filter(|&i| i != k) {
            let x = self.unit_vector(i);
            let xx = self.mul(&x, &x);
            let a = Matrix::from_rows((0..n).map(|r| vec![x[r].clone(), u[r].clone()]).collect());
            match solve_affine(&a, &xx) {
                AffineSolution::Unique(s) => trace[i] = s[0].clone(),
                _ => {
                    return Err(Error::InvariantViolation(format!(
                        "x*x leaves span{{x, u}} at x = {}",
                        self.basis_text(i)
                    )))
                }
            }
        }
        let mut tk = two;
        for i in (0..n).filter(|&i| i != k) {
            tk -= &(&u[i] * &trace[i]);
        }
        trace[k] = tk.checked_div(&u[k])?;
        let norm = |x: &Vector| -> Result<QS3Scalar> {
            let t = dot(&trace, x);
            let xx = self.mul(x, x);
            let w: Vector = x.iter().zip(&xx).map(|(a, b)| &(&t * a) - b).collect();
            let nx = w[k].checked_div(&u[k])?;
            if w.iter().zip(u).any(|(wi, ui)| *wi != &nx * ui) {
                return Err(Error::InvariantViolation(format!(
                    "t(x)x - x*x is not a multiple of the unit at x = {}",
                    self.text(x)
                )));
            }
            Ok(nx)
        };
        let diag: Vec<QS3Scalar> = (0..n)
            .map(|i| norm(&self.unit_vector(i)))
            .collect::<Result<_>>()?;
        let mut polar = Matrix::zeros(n, n);
        for i in 0..n {
            polar[(i, i)] = diag[i].scale_int(2);
            for j in i + 1..n {
                let s = add(&self.unit_vector(i), &self.unit_vector(j));
                let v = &(&norm(&s)? - &diag[i]) - &diag[j];
                polar[(i, j)] = v.clone();
                polar[(j, i)] = v;
            }
        }
        Ok(QuadraticForm::from_polar(polar))
    }

    /// `m(b_i ∘ b_j) = m(b_i) ∘ m(b_j)` on all basis pairs; `m` acts on
    /// carrier coordinates (column `j` is the image of `b_j`).
    pub fn automorphism_check(&self, m: &Matrix) -> Result<Verdict> {
        let n = self.dim();
        if m.rows() != n || m.cols() != n {
            return Err(Error::Invalid(format!("map must be {n}x{n}")));
        }
        if m.rank() != n {
            return Err(Error::SingularMatrix("automorphism candidate".into()));
        }
        let image = |i: usize| -> Vector { (0..n).map(|r| m[(r, i)].clone()).collect() };
        let first = (0..n * n).find_map(|t| {
            let (i, j) = (t / n, t % n);
            let lhs = m.mul_vec(&self.table[i][j]);
            let rhs = self.mul(&image(i), &image(j));
            (lhs != rhs).then(|| Witness {
                identity: "m(x*y) = m(x)*m(y)".into(),
                inputs: vec![self.basis_text(i), self.basis_text(j)],
                lhs: self.text(&lhs),
                rhs: self.text(&rhs),
            })
        });
        Ok(Verdict::from_first(first))
    }

    /// `B(m b_i, m b_j) = B(b_i, b_j)` for the named norm.
    pub fn isometry_check(&self, m: &Matrix, norm: NormId) -> Result<Verdict> {
        let g = self.gram(norm)?;
        let n = self.dim();
        let image = |i: usize| -> Vector { (0..n).map(|r| m[(r, i)].clone()).collect() };
        let first = (0..n * n).find_map(|t| {
            let (i, j) = (t / n, t % n);
            let lhs = dot(&image(i), &g.mul_vec(&image(j)));
            (lhs != g[(i, j)]).then(|| Witness {
                identity: format!("<m x, m y> = <x, y> ({norm})"),
                inputs: vec![self.basis_text(i), self.basis_text(j)],
                lhs: lhs.to_string(),
                rhs: g[(i, j)].to_string(),
            })
        });
        Ok(Verdict::from_first(first))
    }
}

fn add(a: &[QS3Scalar], b: &[QS3Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[QS3Scalar], b: &[QS3Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[QS3Scalar], b: &[QS3Scalar]) -> QS3Scalar {
    let mut acc = QS3Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

// Handle-level entry points.

pub fn find_unit(alg: &AlgebraHandle) -> Result<Option<Multivector>> {
    let a = Algebra::new(alg)?;
    Ok(a.find_unit()?.map(|u| a.to_multivector(&u)))
}

pub fn find_paraunit(alg: &AlgebraHandle) -> Result<Option<Multivector>> {
    let a = Algebra::new(alg)?;
    Ok(a.find_paraunit().map(|u| a.to_multivector(&u)))
}

pub fn verify_composition(alg: &AlgebraHandle, norm: NormId) -> Result<Verdict> {
    Algebra::new(alg)?.verify_composition(norm)
}

pub fn check_flag(alg: &AlgebraHandle, flag: Flag) -> Result<Verdict> {
    Ok(Algebra::new(alg)?.check_flag(flag))
}

pub fn symmetric_composition_check(alg: &AlgebraHandle, norm: NormId) -> Result<Verdict> {
    Algebra::new(alg)?.symmetric_composition_check(norm)
}

pub fn derivation_dimension(alg: &AlgebraHandle) -> Result<usize> {
    Ok(Algebra::new(alg)?.derivation_dimension())
}

pub fn intrinsic_norm_from_unit(alg: &AlgebraHandle, u: &Multivector) -> Result<QuadraticForm> {
    let a = Algebra::new(alg)?;
    let uv = a.from_multivector(u)?;
    if a.find_unit()?.as_ref() != Some(&uv) {
        return Err(Error::Invalid(format!("{u} is not the unit of {alg}")));
    }
    a.intrinsic_norm_from_unit(&uv)
}

pub fn automorphism_check(alg: &AlgebraHandle, m: &Matrix) -> Result<Verdict> {
    Algebra::new(alg)?.automorphism_check(m)
}

#[cfg(test)]
mod tests;
