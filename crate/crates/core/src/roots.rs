//! Integral units on a coordinate grid, closures under a product, and
//! root-system identification by inner-product histograms.

use std::collections::{BTreeMap, HashSet};
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{Algebra, AlgebraHandle, Carrier};
use crate::clifford::{Coords, Multivector, Signature, NAMES};
use crate::error::{Error, Result};
use crate::expr::parse_scalar;
use crate::involutions::{polarize, NormId};
use crate::linalg::Matrix;
use crate::scalar::QS3Scalar;

const GRID_GUARD: u128 = 10_000_000;

/// `{0, ±1/2, ±1}`.
pub fn default_grid() -> Vec<QS3Scalar> {
    [(0, 1), (1, 2), (-1, 2), (1, 1), (-1, 1)]
        .map(|(n, d)| QS3Scalar::frac(n, d))
        .to_vec()
}

/// A duplicate-free set of multivectors in one signature, kept sorted by
/// coordinates so every report is order-independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorSet {
    sig: Signature,
    form: NormId,
    elements: Vec<Multivector>,
}

impl VectorSet {
    pub fn new(sig: Signature, form: NormId, elements: impl IntoIterator<Item = Multivector>) -> Result<Self> {
        let mut elements: Vec<Multivector> = elements.into_iter().collect();
        if let Some(m) = elements.iter().find(|m| m.sig() != sig) {
            return Err(Error::SignatureMismatch {
                left: sig.to_string(),
                right: m.sig().to_string(),
            });
        }
        elements.sort_by(|a, b| a.coords().cmp(b.coords()));
        elements.dedup();
        Ok(Self { sig, form, elements })
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn form(&self) -> NormId {
        self.form
    }

    pub fn elements(&self) -> &[Multivector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &Multivector) -> bool {
        self.elements
            .binary_search_by(|e| e.coords().cmp(m.coords()))
            .is_ok()
    }

    pub fn union(&self, other: &VectorSet) -> Result<VectorSet> {
        VectorSet::new(
            self.sig,
            self.form,
            self.elements.iter().chain(&other.elements).cloned(),
        )
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(NAMES)?;
        for m in &self.elements {
            out.write_record(m.coords().iter().map(|c| c.to_string()))?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R, sig: Signature, form: NormId) -> Result<VectorSet> {
        let mut rd = csv::Reader::from_reader(r);
        let header = rd.headers()?.clone();
        if header.iter().ne(NAMES) {
            return Err(Error::Invalid(format!(
                "CSV header must be {}",
                NAMES.join(",")
            )));
        }
        let mut elements = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let coords: Vec<QS3Scalar> = rec.iter().map(parse_scalar).collect::<Result<_>>()?;
            let coords: Coords = coords
                .try_into()
                .map_err(|_| Error::Invalid("CSV row must have 8 coordinates".into()))?;
            elements.push(Multivector::from_coords(sig, coords));
        }
        VectorSet::new(sig, form, elements)
    }
}

/// All multivectors supported on `carrier` with coordinates in `grid` and
/// form value exactly 1.
pub fn enumerate_norm_units(
    sig: Signature,
    form: NormId,
    carrier: Carrier,
    grid: &[QS3Scalar],
) -> Result<VectorSet> {
    let idx = carrier.indices();
    let total = (grid.len() as u128).checked_pow(idx.len() as u32).unwrap_or(u128::MAX);
    if total > GRID_GUARD {
        return Err(Error::GridTooLarge(total));
    }
    let total = total as usize;
    let g = grid.len();
    let found: Vec<Multivector> = (0..total)
        .into_par_iter()
        .filter_map(|mut t| {
            let mut m = Multivector::zero(sig);
            for &k in idx {
                m.set_coord(k, grid[t % g].clone());
                t /= g;
            }
            match form.eval(&m) {
                Ok(v) if v.is_one() => Some(Ok(m)),
                Ok(_) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect::<Result<_>>()?;
    VectorSet::new(sig, form, found)
}

fn negate_closed(seed: &VectorSet) -> Vec<Multivector> {
    let mut v: Vec<Multivector> = seed.elements.clone();
    v.extend(seed.elements.iter().map(|m| -m));
    v
}

/// Smallest superset of `seed` closed under the product and negation.
pub fn product_closure(seed: &VectorSet, handle: &AlgebraHandle, cap: usize) -> Result<VectorSet> {
    match closure(seed, handle, cap, None)? {
        ClosureOutcome::Closed(set) => Ok(set),
        ClosureOutcome::CapExceeded => Err(Error::CapExceeded(cap)),
        ClosureOutcome::LeftGrid(_) => unreachable!("no grid restriction"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureOutcome {
    Closed(VectorSet),
    CapExceeded,
    /// A product landed off the grid; integral units must stay on it.
    LeftGrid(Multivector),
}

/// Worklist saturation. With `grid`, any product with a coordinate outside
/// the grid stops the search.
pub fn closure(
    seed: &VectorSet,
    handle: &AlgebraHandle,
    cap: usize,
    grid: Option<&[QS3Scalar]>,
) -> Result<ClosureOutcome> {
    if handle.sig != seed.sig {
        return Err(Error::SignatureMismatch {
            left: handle.sig.to_string(),
            right: seed.sig.to_string(),
        });
    }
    let alg = Algebra::new(handle)?;
    if let Some(fast) = grid.and_then(|g| HalfTable::new(&alg, g)) {
        return Ok(fast.closure(seed, cap));
    }
    generic_closure(&alg, seed, cap, grid)
}

fn generic_closure(
    alg: &Algebra,
    seed: &VectorSet,
    cap: usize,
    grid: Option<&[QS3Scalar]>,
) -> Result<ClosureOutcome> {
    let mut list: Vec<Vec<QS3Scalar>> = Vec::new();
    let mut seen: HashSet<Vec<QS3Scalar>> = HashSet::new();
    for m in negate_closed(seed) {
        let v = alg.from_multivector(&m)?;
        if seen.insert(v.clone()) {
            list.push(v);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..=i {
            for (a, b) in [(i, j), (j, i)] {
                let p = alg.mul(&list[a], &list[b]);
                if let Some(g) = grid {
                    if p.iter().any(|c| !g.contains(c)) {
                        return Ok(ClosureOutcome::LeftGrid(alg.to_multivector(&p)));
                    }
                }
                let n: Vec<QS3Scalar> = p.iter().map(|c| -c).collect();
                for v in [p, n] {
                    if seen.insert(v.clone()) {
                        list.push(v);
                        if list.len() > cap {
                            return Ok(ClosureOutcome::CapExceeded);
                        }
                    }
                }
            }
        }
        i += 1;
    }
    let set = VectorSet::new(seed.sig, seed.form, list.iter().map(|v| alg.to_multivector(v)))?;
    Ok(ClosureOutcome::Closed(set))
}

/// Integer fast path for products whose basis table is a signed permutation
/// and grids inside `{0, ±1/2, ±1}`: coordinates are stored in half units.
struct HalfTable {
    dim: usize,
    idx: Vec<usize>,
    sig: Signature,
    table: Vec<(i64, usize)>,
    allowed: [bool; 5],
}

impl HalfTable {
    fn new(alg: &Algebra, grid: &[QS3Scalar]) -> Option<Self> {
        let n = alg.dim();
        let mut allowed = [false; 5];
        for g in grid {
            let h = g.scale_int(2);
            let k = (-2..=2).find(|&k| h == QS3Scalar::from_int(k))?;
            allowed[(k + 2) as usize] = true;
        }
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = alg.structure(i, j);
                let mut nz = v.iter().enumerate().filter(|(_, c)| !c.is_zero());
                let (k, c) = nz.next()?;
                if nz.next().is_some() {
                    return None;
                }
                let s = if c.is_one() {
                    1
                } else if (-c).is_one() {
                    -1
                } else {
                    return None;
                };
                table.push((s, k));
            }
        }
        Some(Self {
            dim: n,
            idx: alg.handle().carrier.indices().to_vec(),
            sig: alg.sig(),
            table,
            allowed,
        })
    }

    fn encode(&self, m: &Multivector) -> Option<Vec<i64>> {
        self.idx
            .iter()
            .map(|&k| {
                let h = m.coord(k).scale_int(2);
                (-2..=2).find(|&v| h == QS3Scalar::from_int(v))
            })
            .collect()
    }

    fn decode(&self, v: &[i64]) -> Multivector {
        let mut m = Multivector::zero(self.sig);
        for (&k, &h) in self.idx.iter().zip(v) {
            m.set_coord(k, QS3Scalar::frac(h, 2));
        }
        m
    }

    /// Product in half units; `Err` carries the quarter-unit result when it
    /// leaves the grid.
    fn mul(&self, x: &[i64], y: &[i64]) -> Result<Vec<i64>, Vec<i64>> {
        let n = self.dim;
        let mut acc = vec![0i64; n];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let (s, k) = self.table[i * n + j];
                acc[k] += s * a * b;
            }
        }
        let ok = acc
            .iter()
            .all(|&q| q % 2 == 0 && (-2..=2).contains(&(q / 2)) && self.allowed[(q / 2 + 2) as usize]);
        if ok {
            Ok(acc.into_iter().map(|q| q / 2).collect())
        } else {
            Err(acc)
        }
    }

    fn closure(&self, seed: &VectorSet, cap: usize) -> ClosureOutcome {
        let mut list: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        for m in negate_closed(seed) {
            match self.encode(&m) {
                Some(v) => {
                    if seen.insert(v.clone()) {
                        list.push(v);
                    }
                }
                None => return ClosureOutcome::LeftGrid(m),
            }
        }
        let mut i = 0;
        while i < list.len() {
            for j in 0..=i {
                for (a, b) in [(i, j), (j, i)] {
                    let p = match self.mul(&list[a], &list[b]) {
                        Ok(p) => p,
                        Err(quarter) => {
                            let mut m = Multivector::zero(self.sig);
                            for (&k, &q) in self.idx.iter().zip(&quarter) {
                                m.set_coord(k, QS3Scalar::frac(q, 4));
                            }
                            return ClosureOutcome::LeftGrid(m);
                        }
                    };
                    let neg: Vec<i64> = p.iter().map(|c| -c).collect();
                    for v in [p, neg] {
                        if seen.insert(v.clone()) {
                            list.push(v);
                            if list.len() > cap {
                                return ClosureOutcome::CapExceeded;
                            }
                        }
                    }
                }
            }
            i += 1;
        }
        let set = VectorSet::new(seed.sig, seed.form, list.iter().map(|v| self.decode(v)))
            .expect("same signature");
        ClosureOutcome::Closed(set)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedHit {
    pub seed: Multivector,
    pub size: usize,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SeedSearchReport {
    pub scanned: usize,
    pub hits: Vec<SeedHit>,
    pub cap_exceeded: usize,
    pub left_grid: usize,
    /// Closed results of the wrong size, as `(size, how many seeds)`.
    pub other_sizes: Vec<(usize, usize)>,
}

/// For each candidate `h`, the closure of `base ∪ {h}`; hits are the seeds
/// whose closure has exactly `target` elements.
pub fn seed_search(
    candidates: &VectorSet,
    base: &VectorSet,
    handle: &AlgebraHandle,
    target: usize,
    cap: usize,
    grid: Option<&[QS3Scalar]>,
) -> Result<SeedSearchReport> {
    let outcomes: Vec<(Multivector, ClosureOutcome)> = candidates
        .elements()
        .par_iter()
        .map(|h| {
            let seed = base.union(&VectorSet::new(base.sig, base.form, [h.clone()])?)?;
            Ok((h.clone(), closure(&seed, handle, cap, grid)?))
        })
        .collect::<Result<_>>()?;
    let mut report = SeedSearchReport {
        scanned: outcomes.len(),
        ..Default::default()
    };
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for (seed, outcome) in outcomes {
        match outcome {
            ClosureOutcome::Closed(set) if set.len() == target => report.hits.push(SeedHit {
                seed,
                size: set.len(),
            }),
            ClosureOutcome::Closed(set) => *sizes.entry(set.len()).or_default() += 1,
            ClosureOutcome::CapExceeded => report.cap_exceeded += 1,
            ClosureOutcome::LeftGrid(_) => report.left_grid += 1,
        }
    }
    report.other_sizes = sizes.into_iter().collect();
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct Component {
    pub size: usize,
    pub rank: usize,
    pub histogram: Vec<(String, usize)>,
    pub type_label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystemReport {
    pub count: usize,
    pub rank: usize,
    pub form: NormId,
    pub form_value: QS3Scalar,
    pub components: Vec<Component>,
    /// Per-root histogram of rescaled inner products, shared by all roots
    /// when `uniform_spectrum` holds.
    pub gram_spectrum: Vec<(String, usize)>,
    pub uniform_spectrum: bool,
    pub type_label: String,
}

fn rank_of(elements: &[&Multivector]) -> usize {
    if elements.is_empty() {
        return 0;
    }
    Matrix::from_rows(elements.iter().map(|m| m.coords().to_vec()).collect()).rank()
}

type Histogram = BTreeMap<QS3Scalar, usize>;

fn show(h: &Histogram) -> Vec<(String, usize)> {
    h.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `(count, rank, histogram over -2, -1, 0, 1, 2)` of the single-length
/// irreducible systems that can occur here.
fn catalog(count: usize, rank: usize, h: &Histogram) -> Option<&'static str> {
    let expect = |a: usize, b: usize, c: usize| -> Histogram {
        [(-2, 1), (-1, a), (0, b), (1, c), (2, 1)]
            .into_iter()
            .filter(|(_, n)| *n > 0)
            .map(|(k, n)| (QS3Scalar::from_int(k), n))
            .collect()
    };
    match (count, rank) {
        (2, 1) if *h == expect(0, 0, 0) => Some("A1"),
        (24, 4) if *h == expect(8, 6, 8) => Some("D4"),
        (240, 8) if *h == expect(56, 126, 56) => Some("E8"),
        // F4 has two root lengths and cannot pass the equal-norm precondition.
        _ => None,
    }
}

pub fn identify_root_system(set: &VectorSet) -> Result<RootSystemReport> {
    let els = set.elements();
    let values: Vec<QS3Scalar> = els
        .par_iter()
        .map(|m| set.form.eval(m))
        .collect::<Result<_>>()?;
    let nval = values.first().cloned().unwrap_or_else(QS3Scalar::zero);
    if values.iter().any(|v| *v != nval) {
        return Err(Error::MixedNorms);
    }
    if !els.is_empty() && nval.is_zero() {
        return Err(Error::NullForm);
    }
    let n = els.len();
    let inv = if n > 0 { nval.recip()? } else { QS3Scalar::one() };
    // ⟨x,x⟩ = 2 n(x), so dividing by n(x) rescales roots to length² 2.
    let ip: Vec<Vec<QS3Scalar>> = (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .map(|j| polarize(set.form, &els[i], &els[j]).map(|v| &v * &inv))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..i {
            if !ip[i][j].is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(i);
    }

    let histogram_of = |i: usize, within: &[usize]| -> Histogram {
        let mut h = Histogram::new();
        for &j in within {
            *h.entry(ip[i][j].clone()).or_default() += 1;
        }
        h
    };
    let mut components: Vec<Component> = blocks
        .values()
        .map(|members| {
            let hs: Vec<Histogram> = members.iter().map(|&i| histogram_of(i, members)).collect();
            let uniform = hs.windows(2).all(|w| w[0] == w[1]);
            let rank = rank_of(&members.iter().map(|&i| &els[i]).collect::<Vec<_>>());
            let label = if uniform {
                catalog(members.len(), rank, &hs[0])
            } else {
                None
            };
            Component {
                size: members.len(),
                rank,
                histogram: show(&hs[0]),
                type_label: label.unwrap_or("unknown").to_string(),
            }
        })
        .collect();
    components.sort_by(|a, b| (b.size, &a.type_label).cmp(&(a.size, &b.type_label)));

    let all: Vec<usize> = (0..n).collect();
    let global: Vec<Histogram> = (0..n).map(|i| histogram_of(i, &all)).collect();
    let uniform_spectrum = global.windows(2).all(|w| w[0] == w[1]);
    let labels: Vec<&str> = components.iter().map(|c| c.type_label.as_str()).collect();
    let type_label = if labels.iter().any(|l| *l == "unknown") || labels.is_empty() {
        "unknown".to_string()
    } else if labels.iter().all(|l| *l == "A1") {
        format!("A1^{}", labels.len())
    } else {
        labels.join("⊕")
    };

    Ok(RootSystemReport {
        count: n,
        rank: rank_of(&els.iter().collect::<Vec<_>>()),
        form: set.form,
        form_value: nval,
        components,
        gram_spectrum: global.first().map(show).unwrap_or_default(),
        uniform_spectrum,
        type_label,
    })
}

/// The 24 Hurwitz units: norm-1 rotors of (3,0) on the default grid.
pub fn hurwitz_units() -> Result<VectorSet> {
    enumerate_norm_units(Signature::new(3, 0)?, NormId::NTilde, Carrier::Rot, &default_grid())
}

/// Closure of the Hurwitz units and `c` under the geometric product,
/// measured with `n†`.
pub fn doubled_hurwitz(cap: usize) -> Result<VectorSet> {
    let sig = Signature::new(3, 0)?;
    let units = hurwitz_units()?;
    let seed = VectorSet::new(
        sig,
        NormId::NDagger,
        units
            .elements()
            .iter()
            .cloned()
            .chain([Multivector::pseudoscalar(sig)]),
    )?;
    product_closure(
        &seed,
        &AlgebraHandle::new(sig, crate::products::ProductId::Clifford),
        cap,
    )
}

/// Norm-1 vectors of `(sig, n*)` on the default grid, split into the signed
/// blade units and the half-coordinate vectors.
pub fn octonion_grid_units(sig: Signature) -> Result<(VectorSet, VectorSet)> {
    let all = enumerate_norm_units(sig, NormId::NStar, Carrier::Full, &default_grid())?;
    let (blades, halves): (Vec<_>, Vec<_>) = all
        .elements()
        .iter()
        .cloned()
        .partition(|m| m.coords().iter().filter(|c| !c.is_zero()).count() == 1);
    Ok((
        VectorSet::new(sig, NormId::NStar, blades)?,
        VectorSet::new(sig, NormId::NStar, halves)?,
    ))
}
