//! Demazure crystals on truncated paths.
//!
//! `B_{w^{(k)}}(λ)` is built by Kashiwara's recursion (iterated `f̃_i`
//! string closures along the reflection sequence) and compared with the
//! tensor-product description assembled from the towers
//! `B_a^{(j+κ-1, …, j)}`. The assumption checkers (II)–(IV) decide whether
//! that comparison is expected to succeed.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::crystal::{all_words, f_string_closure, CrystalElem, CrystalError, TensorWord};
use crate::energy::{Path, PathModel};
use crate::lattice::{AffineWeight, WeylWord};
use crate::symtensor::BoxElem;

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DemazureError {
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error("reflection table: {0}")]
    InvalidTable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("p/q lemma fails for i={i}, m={m}, p={p}, q={q}: {lhs} != {rhs}")]
    LemmaViolation { i: usize, m: u32, p: u32, q: u32, lhs: String, rhs: String },
}

/// The data `d`, `κ` and `i_a^{(j)}` that fix the reflection sequence
/// `w^{(k)} = r_{i_a^{(j)}} w^{(k-1)}` with `k = (j-1)d + a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionTable {
    pub n: usize,
    pub d: usize,
    pub kappa: usize,
    /// `rows[(j-1) mod n][a-1] = i_a^{(j)}`.
    rows: Vec<Vec<usize>>,
}

impl ReflectionTable {
    /// `d = n - 1`, `i_a^{(j)} ≡ a - j`, so that `w^{(k)} = r_{k-1} ⋯ r_1 r_0`.
    pub fn sl_n(n: usize) -> Self {
        let d = n - 1;
        let rows = (1..=n)
            .map(|j| (1..=d).map(|a| (a + n * 2 - j) % n).collect())
            .collect();
        ReflectionTable { n, d, kappa: 1, rows }
    }

    /// A user table with one row per `j = 1..=n` (periodic in `j`).
    pub fn custom(n: usize, rows: Vec<Vec<usize>>) -> Result<Self, DemazureError> {
        if rows.len() != n {
            return Err(DemazureError::InvalidTable(format!("expected {n} rows, got {}", rows.len())));
        }
        let d = rows[0].len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(DemazureError::InvalidTable("rows must be nonempty and of equal length".into()));
        }
        if rows.iter().flatten().any(|&i| i >= n) {
            return Err(DemazureError::InvalidTable(format!("node index out of range 0..{n}")));
        }
        Ok(ReflectionTable { n, d, kappa: 1, rows })
    }

    pub fn with_kappa(mut self, kappa: usize) -> Self {
        assert!(kappa >= 1, "mixing index is positive");
        self.kappa = kappa;
        self
    }

    /// `i_a^{(j)}` for `j ≥ 1`, `1 ≤ a ≤ d`.
    pub fn node(&self, j: usize, a: usize) -> usize {
        self.rows[(j - 1) % self.n][a - 1]
    }

    /// `(j, a)` with `k = (j-1)d + a`, `1 ≤ a ≤ d`.
    pub fn split(&self, k: usize) -> (usize, usize) {
        assert!(k >= 1);
        ((k - 1) / self.d + 1, (k - 1) % self.d + 1)
    }

    /// Node of the `k`-th reflection.
    pub fn letter(&self, k: usize) -> usize {
        let (j, a) = self.split(k);
        self.node(j, a)
    }

    pub fn weyl_word(&self, k: usize) -> WeylWord {
        WeylWord::new((1..=k).rev().map(|s| self.letter(s)).collect())
    }
}

/// `B_w(λ)` as a set of truncated paths of uniform depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemazureSet {
    pub word: WeylWord,
    pub depth: usize,
    pub elems: BTreeSet<Path>,
}

impl DemazureSet {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Certified,
    Inconclusive,
}

/// `{"assumption": …, "params": …, "status": …, "witness": …}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssumptionReport {
    pub assumption: String,
    pub params: Value,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixingRow {
    pub j: usize,
    pub passed: bool,
    /// Smallest `a` at which the equality already held.
    pub decided_at: Option<usize>,
    /// An element of the right-hand side missing from the left, on failure.
    pub missing: Option<TensorWord<BoxElem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixingCheck {
    pub kappa: usize,
    pub rows: Vec<MixingRow>,
}

impl MixingCheck {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsViolation {
    pub j: usize,
    pub a: usize,
    pub node: usize,
    pub b: BoxElem,
    pub pairing: i64,
    pub eps: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsCheck {
    pub violations: Vec<EpsViolation>,
    /// `(j, a, ⟨λ_j, h_{i_a^{(j)}}⟩)` for every checked slot.
    pub pairings: Vec<(usize, usize, i64)>,
}

impl EpsCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruhatStep {
    /// Step from `w^{(k-1)}` to `w^{(k)}`.
    pub k: usize,
    pub letter: usize,
    /// `⟨w^{(k-1)} Λ_0, h_{letter}⟩`.
    pub pairing_lambda0: i64,
    /// First probe with positive pairing, if any.
    pub probe: Option<String>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruhatCheck {
    pub steps: Vec<BruhatStep>,
}

impl BruhatCheck {
    pub fn all_certified(&self) -> bool {
        self.steps.iter().all(|s| s.certified)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub k: usize,
    pub j: usize,
    pub a: usize,
    pub kappa: usize,
    pub depth: usize,
    pub recursive_size: usize,
    pub tensor_size: usize,
    pub equal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PqWitness {
    pub p: u32,
    pub q: u32,
    /// `true` for the case `α − m ≥ β`.
    pub first_case: bool,
}

/// Everything needed to build Demazure sets for one `(B^l, λ, i-table)`.
#[derive(Clone, Debug)]
pub struct Demazure {
    pub model: PathModel,
    pub table: ReflectionTable,
    pub cap: usize,
}

impl Demazure {
    pub fn new(model: PathModel, table: ReflectionTable) -> Result<Self, DemazureError> {
        if table.n != model.n() {
            return Err(DemazureError::InvalidTable(format!(
                "table is for n = {}, crystal has n = {}",
                table.n,
                model.n()
            )));
        }
        Ok(Demazure { model, table, cap: DEFAULT_CAP })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    fn n(&self) -> usize {
        self.model.n()
    }

    fn all_of_b(&self) -> BTreeSet<TensorWord<BoxElem>> {
        self.model.crystal.elements().into_iter().map(TensorWord::singleton).collect()
    }

    /// `⋃_m f̃_i^m S \ {0}` on truncated paths; a `TruncationExhausted` is
    /// passed through to the caller.
    pub fn f_closure(&self, set: &BTreeSet<Path>, i: usize) -> Result<BTreeSet<Path>, CrystalError> {
        f_string_closure(set, i, self.cap)
    }

    /// Like [`Self::f_closure`], but deepens the whole set by one ground
    /// factor and retries whenever `f̃_i` reaches the head.
    pub fn f_closure_deepening(&self, set: &BTreeSet<Path>, i: usize) -> Result<BTreeSet<Path>, DemazureError> {
        let mut cur = set.clone();
        loop {
            match self.f_closure(&cur, i) {
                Ok(s) => return Ok(s),
                Err(CrystalError::TruncationExhausted { .. }) => {
                    cur = cur.iter().map(|p| self.model.deepen(p)).collect();
                }
                Err(e) => return Err(e.into()),
            }
        }
    }

    pub fn default_depth(&self, k: usize) -> usize {
        k.div_ceil(self.table.d) + self.table.kappa + 1
    }

    /// `B_{w^{(k)}}(λ)` by the recursion, starting from the ground path at
    /// the given depth.
    pub fn recursive(&self, k: usize, depth: usize) -> Result<DemazureSet, DemazureError> {
        Ok(self.recursive_chain(k, depth)?.pop().expect("chain is nonempty"))
    }

    /// `B_{w^{(0)}}(λ), …, B_{w^{(k)}}(λ)`; depths may grow along the chain.
    pub fn recursive_chain(&self, k: usize, depth: usize) -> Result<Vec<DemazureSet>, DemazureError> {
        let mut cur: BTreeSet<Path> = BTreeSet::from([self.model.ground_path(depth)]);
        let mut out = vec![DemazureSet { word: WeylWord::identity(), depth, elems: cur.clone() }];
        for step in 1..=k {
            cur = self.f_closure_deepening(&cur, self.table.letter(step))?;
            let depth = cur.first().map(Path::len).unwrap_or(depth);
            out.push(DemazureSet { word: self.table.weyl_word(step), depth, elems: cur.clone() });
        }
        Ok(out)
    }

    /// `B_a^{(j_hi, …, j_lo)}` as headless words `p(j_hi) ⊗ ⋯ ⊗ p(j_lo)`.
    pub fn tower(&self, j_hi: usize, j_lo: usize, a: usize) -> Result<BTreeSet<TensorWord<BoxElem>>, DemazureError> {
        assert!(j_lo >= 1 && j_hi >= j_lo && a <= self.table.d);
        let mut set: BTreeSet<TensorWord<BoxElem>> = if j_hi == j_lo {
            BTreeSet::from([TensorWord::singleton(self.model.ground_elem(j_hi))])
        } else {
            let top = TensorWord::singleton(self.model.ground_elem(j_hi));
            self.tower(j_hi - 1, j_lo, self.table.d)?
                .iter()
                .map(|rest| top.concat(rest))
                .collect()
        };
        for step in 1..=a {
            set = f_string_closure(&set, self.table.node(j_hi, step), self.cap)?;
        }
        Ok(set)
    }

    /// `B_a^{(j)}`.
    pub fn build_ba(&self, j: usize, a: usize) -> Result<BTreeSet<BoxElem>, DemazureError> {
        Ok(self.tower(j, j, a)?.into_iter().map(|w| w.factors[0].clone()).collect())
    }

    /// `𝒫^{(k)}(λ, B)` truncated at `depth ≥ j` (raised to `j` if smaller).
    pub fn build_p(&self, k: usize, depth: usize) -> Result<DemazureSet, DemazureError> {
        if k == 0 {
            return Ok(DemazureSet {
                word: WeylWord::identity(),
                depth,
                elems: BTreeSet::from([self.model.ground_path(depth)]),
            });
        }
        let kappa = self.table.kappa;
        let (j, a) = self.table.split(k);
        let depth = depth.max(j);
        let ground = TensorWord::with_head(
            self.model.lambda_k(depth),
            if depth > j { self.model.ground_segment(depth, j + 1).factors } else { Vec::new() },
        );
        let elems: BTreeSet<Path> = if j < kappa {
            self.tower(j, 1, a)?.iter().map(|t| ground.concat(t)).collect()
        } else {
            let mixed = self.tower(j, j - kappa + 1, a)?;
            let free = all_words(&self.model.crystal.elements(), j - kappa);
            let total = mixed.len().saturating_mul(free.len());
            if total > self.cap {
                return Err(CrystalError::BudgetExceeded { cap: self.cap }.into());
            }
            let mut out = BTreeSet::new();
            for m in &mixed {
                let head = ground.concat(m);
                for f in &free {
                    out.insert(head.concat(f));
                }
            }
            out
        };
        Ok(DemazureSet { word: self.table.weyl_word(k), depth, elems })
    }

    /// Assumption (II) for the mixing index `kappa` over one σ-period of `j`.
    ///
    /// Levels `a = 1, …, d` are tried in turn; once the equality holds at
    /// some `a` it holds for every larger `a`, so the scan stops there.
    pub fn check_ii(&self, kappa: usize) -> Result<MixingCheck, DemazureError> {
        let d = self.table.d;
        let mut rows = Vec::with_capacity(self.n());
        for j in 1..=self.n() {
            let top = j + kappa - 1;
            let mut row = MixingRow { j, passed: false, decided_at: None, missing: None };
            for a in 1..=d {
                let lhs = self.tower(top, j, a)?;
                let rhs: BTreeSet<TensorWord<BoxElem>> = if kappa == 1 {
                    self.all_of_b()
                } else {
                    let upper = self.tower(top, j + 1, a)?;
                    let b = self.all_of_b();
                    upper.iter().flat_map(|u| b.iter().map(move |x| u.concat(x))).collect()
                };
                if lhs == rhs {
                    row.passed = true;
                    row.decided_at = Some(a);
                    break;
                }
                if a == d {
                    row.missing = rhs.difference(&lhs).next().or_else(|| lhs.difference(&rhs).next()).cloned();
                }
            }
            rows.push(row);
        }
        Ok(MixingCheck { kappa, rows })
    }

    /// Least `κ ≤ kappa_max` passing assumption (II), if any.
    pub fn mixing_index(&self, kappa_max: usize) -> Result<Option<usize>, DemazureError> {
        for kappa in 1..=kappa_max {
            if self.check_ii(kappa)?.passed() {
                return Ok(Some(kappa));
            }
        }
        Ok(None)
    }

    /// Assumption (III): `⟨λ_j, h_i⟩ ≤ ε_i(b)` for `b ∈ B_{a-1}^{(j)}`,
    /// `i = i_a^{(j)}`.
    pub fn check_iii(&self) -> Result<EpsCheck, DemazureError> {
        let mut violations = Vec::new();
        let mut pairings = Vec::new();
        for j in 1..=self.n() {
            let lambda_j = self.model.lambda_k(j);
            for a in 1..=self.table.d {
                let i = self.table.node(j, a);
                let pairing = lambda_j.pair(i);
                pairings.push((j, a, pairing));
                for b in self.build_ba(j, a - 1)? {
                    if pairing > i64::from(b.eps(i)) {
                        violations.push(EpsViolation { j, a, node: i, eps: b.eps(i), b, pairing });
                    }
                }
            }
        }
        Ok(EpsCheck { violations, pairings })
    }

    /// Assumption (IV) through the sufficient criterion: step `k` is
    /// certified when some dominant probe `μ` has `⟨w^{(k-1)} μ, h_{i_k}⟩ > 0`.
    /// An uncertified step is inconclusive, never a disproof.
    pub fn check_iv(&self, k_max: usize) -> BruhatCheck {
        let n = self.n();
        let mut probes: Vec<(String, AffineWeight)> =
            (0..n).map(|i| (format!("L{i}"), AffineWeight::fundamental(i, n))).collect();
        probes.push((format!("lambda={}", self.model.lambda), self.model.lambda.af()));
        let mut images: Vec<AffineWeight> = probes.iter().map(|(_, w)| w.clone()).collect();
        let mut steps = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            let letter = self.table.letter(k);
            let pairing_lambda0 = images[0].pair(letter);
            let probe = probes
                .iter()
                .zip(&images)
                .find(|(_, w)| w.pair(letter) > 0)
                .map(|((name, _), _)| name.clone());
            steps.push(BruhatStep { k, letter, pairing_lambda0, certified: probe.is_some(), probe });
            for w in &mut images {
                *w = crate::lattice::reflect(letter as i64, w);
            }
        }
        BruhatCheck { steps }
    }

    /// Compare the recursive construction with the tensor description.
    pub fn verify_theorem(&self, k: usize) -> Result<TheoremCheck, DemazureError> {
        let rec = self.recursive(k, self.default_depth(k))?;
        let tens = self.build_p(k, rec.depth)?;
        let depth = rec.depth.max(tens.depth);
        let align = |s: &DemazureSet| -> BTreeSet<Path> {
            s.elems.iter().map(|p| self.model.deepen_to(p, depth)).collect()
        };
        let (lhs, rhs) = (align(&rec), align(&tens));
        let (j, a) = if k == 0 { (0, 0) } else { self.table.split(k) };
        Ok(TheoremCheck {
            k,
            j,
            a,
            kappa: self.table.kappa,
            depth,
            recursive_size: lhs.len(),
            tensor_size: rhs.len(),
            equal: lhs == rhs,
        })
    }

    pub fn report_ii(&self, check: &MixingCheck) -> AssumptionReport {
        let failing: Vec<&MixingRow> = check.rows.iter().filter(|r| !r.passed).collect();
        AssumptionReport {
            assumption: "II".into(),
            params: self.params(json!({ "kappa": check.kappa })),
            status: if check.passed() { Status::Pass } else { Status::Fail },
            witness: if failing.is_empty() {
                json!({ "rows": check.rows })
            } else {
                json!({ "failing": failing })
            },
        }
    }

    pub fn report_iii(&self, check: &EpsCheck) -> AssumptionReport {
        AssumptionReport {
            assumption: "III".into(),
            params: self.params(json!({})),
            status: if check.passed() { Status::Pass } else { Status::Fail },
            witness: if check.passed() {
                json!({ "pairings": check.pairings })
            } else {
                json!({ "violations": check.violations })
            },
        }
    }

    pub fn report_iv(&self, check: &BruhatCheck) -> AssumptionReport {
        AssumptionReport {
            assumption: "IV".into(),
            params: self.params(json!({ "k_max": check.steps.len() })),
            status: if check.all_certified() { Status::Certified } else { Status::Inconclusive },
            witness: json!({ "steps": check.steps }),
        }
    }

    fn params(&self, extra: Value) -> Value {
        let mut p = json!({
            "n": self.n(),
            "l": self.model.l(),
            "lambda": self.model.lambda,
            "d": self.table.d,
        });
        if let (Value::Object(dst), Value::Object(src)) = (&mut p, extra) {
            dst.extend(src);
        }
        p
    }
}

fn f_power<E: CrystalElem>(w: &TensorWord<E>, i: usize, m: u32) -> Option<TensorWord<E>> {
    (0..m).try_fold(w.clone(), |acc, _| acc.f(i))
}

fn e_power<E: CrystalElem>(w: &TensorWord<E>, i: usize, m: u32) -> Option<TensorWord<E>> {
    (0..m).try_fold(w.clone(), |acc, _| acc.e(i))
}

/// Find `p, q ≥ 0` with `f̃_i^p (b1 ⊗ ẽ_i^q b2) = f̃_i^m b1 ⊗ b2` and check
/// the identity by direct computation.
///
/// With `α = φ_i(b1)` and `β = ε_i(b2)`: if `α − m ≥ β` then `(p, q) = (m, 0)`,
/// otherwise `(p, q) = (β − α + 2m, β − α + m)`.
pub fn lemma_pq<E: CrystalElem>(
    b1: &TensorWord<E>,
    b2: &TensorWord<E>,
    i: usize,
    m: u32,
) -> Result<PqWitness, DemazureError> {
    if b1.head.is_some() || b2.head.is_some() {
        return Err(DemazureError::Precondition("lemma operands must be headless".into()));
    }
    let alpha = b1.phi(i);
    let beta = b2.eps(i);
    if m > alpha {
        return Err(DemazureError::Precondition(format!("f_{i}^{m} b1 = 0 (phi_{i}(b1) = {alpha})")));
    }
    let first_case = alpha - m >= beta;
    let (p, q) = if first_case { (m, 0) } else { (beta + 2 * m - alpha, beta + m - alpha) };

    let rhs = f_power(b1, i, m).expect("m <= phi").concat(b2);
    let lhs = e_power(b2, i, q).and_then(|e2| f_power(&b1.concat(&e2), i, p));
    match lhs {
        Some(l) if l == rhs => Ok(PqWitness { p, q, first_case }),
        other => Err(DemazureError::LemmaViolation {
            i,
            m,
            p,
            q,
            lhs: other.map(|w| format!("{w:?}")).unwrap_or_else(|| "0".into()),
            rhs: format!("{rhs:?}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ClassicalWeight;
    use crate::symtensor::SymTensor;

    fn demazure(n: usize, l: u32, lam: &[i64], kappa: usize) -> Demazure {
        let model = PathModel::new(n, l, ClassicalWeight(lam.to_vec())).unwrap();
        Demazure::new(model, ReflectionTable::sl_n(n).with_kappa(kappa)).unwrap()
    }

    #[test]
    fn sl_n_table_is_staircase() {
        for n in 2..=5 {
            let t = ReflectionTable::sl_n(n);
            for k in 1..=3 * n {
                assert_eq!(t.letter(k), (k - 1) % n);
            }
            assert_eq!(t.weyl_word(4), WeylWord::staircase(4, n));
        }
        assert!(ReflectionTable::custom(2, vec![vec![0], vec![2]]).is_err());
    }

    #[test]
    fn f_closure_basics() {
        let dz = demazure(2, 1, &[1, 0], 1);
        let g = BTreeSet::from([dz.model.ground_path(1)]);
        let once = dz.f_closure(&g, 0).unwrap();
        assert_eq!(once.len(), 2);
        assert_eq!(dz.f_closure(&once, 0).unwrap(), once);
        assert!(once.is_superset(&g));
    }

    #[test]
    fn recursion_small_cases() {
        let dz = demazure(2, 1, &[1, 0], 1);
        let s0 = dz.recursive(0, 3).unwrap();
        assert_eq!(s0.elems, BTreeSet::from([dz.model.ground_path(3)]));
        let s2 = dz.recursive(2, 2).unwrap();
        assert_eq!(s2.len(), 4);
        assert!(s2.elems.iter().all(|p| p.head == Some(dz.model.lambda_k(s2.depth))));
    }

    #[test]
    fn recursion_deepens_from_zero_depth() {
        let dz = demazure(3, 1, &[1, 0, 0], 1);
        let shallow = dz.recursive(5, 0).unwrap();
        let deep = dz.recursive(5, 6).unwrap();
        let d = shallow.depth.max(deep.depth);
        let a: BTreeSet<_> = shallow.elems.iter().map(|p| dz.model.deepen_to(p, d)).collect();
        let b: BTreeSet<_> = deep.elems.iter().map(|p| dz.model.deepen_to(p, d)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn chain_is_monotone() {
        let dz = demazure(2, 2, &[1, 1], 2);
        let chain = dz.recursive_chain(6, 2).unwrap();
        for w in chain.windows(2) {
            let d = w[1].depth;
            let prev: BTreeSet<_> = w[0].elems.iter().map(|p| dz.model.deepen_to(p, d)).collect();
            assert!(prev.is_subset(&w[1].elems));
        }
    }

    #[test]
    fn ba_for_lambda0() {
        for n in 2..=4 {
            for l in 1..=3u32 {
                let mut lam = vec![0; n];
                lam[0] = l as i64;
                let dz = demazure(n, l, &lam, 1);
                for a in 0..n {
                    let got = dz.build_ba(n, a).unwrap();
                    let expect: BTreeSet<BoxElem> = SymTensor::new(n, l)
                        .elements()
                        .into_iter()
                        .filter(|b| b.coords()[..=a].iter().sum::<u32>() == l)
                        .collect();
                    assert_eq!(got, expect, "n={n} l={l} a={a}");
                }
                for j in 1..=n {
                    assert_eq!(dz.build_ba(j, 0).unwrap(), BTreeSet::from([dz.model.ground_elem(j)]));
                }
            }
        }
        let dz = demazure(3, 1, &[1, 0, 0], 1);
        assert_eq!(
            dz.build_ba(3, 1).unwrap(),
            BTreeSet::from([BoxElem::new(vec![1, 0, 0]), BoxElem::new(vec![0, 1, 0])])
        );
    }

    #[test]
    fn b_lambda_inequalities() {
        for n in 2..=3 {
            for l in 1..=3u32 {
                for lam in ClassicalWeight::dominant_of_level(n, l) {
                    let dz = demazure(n, l, &lam.0, 1);
                    let got = dz.build_ba(n, n - 1).unwrap();
                    let expect: BTreeSet<BoxElem> = SymTensor::new(n, l)
                        .elements()
                        .into_iter()
                        .filter(|b| {
                            (1..n).all(|i| {
                                let xs: i64 = b.coords()[..i].iter().map(|&x| i64::from(x)).sum();
                                let ms: i64 = lam.0[..i].iter().sum();
                                xs <= ms
                            })
                        })
                        .collect();
                    assert_eq!(got, expect, "n={n} lambda={lam}");
                }
            }
        }
    }

    #[test]
    fn mixing_indices() {
        for n in 2..=3 {
            for l in 1..=3u32 {
                let mut lam = vec![0; n];
                lam[0] = l as i64;
                assert_eq!(demazure(n, l, &lam, 1).mixing_index(3).unwrap(), Some(1));
            }
        }
        let dz = demazure(2, 2, &[1, 1], 1);
        assert!(!dz.check_ii(1).unwrap().passed());
        assert_eq!(dz.mixing_index(3).unwrap(), Some(2));
        let dz = demazure(3, 2, &[1, 1, 0], 1);
        assert_eq!(dz.mixing_index(3).unwrap(), Some(2));
    }

    #[test]
    fn condition_iii() {
        for n in 2..=3 {
            for l in 1..=2u32 {
                for lam in ClassicalWeight::dominant_of_level(n, l) {
                    let dz = demazure(n, l, &lam.0, 1);
                    let c = dz.check_iii().unwrap();
                    assert!(c.passed(), "{lam}: {:?}", c.violations);
                    // at j = n: ⟨λ_n, h_a⟩ = m_a
                    for &(j, a, pairing) in &c.pairings {
                        if j == n {
                            assert_eq!(pairing, lam.0[a]);
                        }
                    }
                }
            }
        }
        let mut dz = demazure(3, 1, &[1, 0, 0], 1);
        dz.table = ReflectionTable::custom(3, vec![vec![0, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let c = dz.check_iii().unwrap();
        assert!(!c.passed());
        assert!(c.violations.iter().any(|v| v.pairing > i64::from(v.eps)));
    }

    #[test]
    fn bruhat_steps_n2() {
        let dz = demazure(2, 1, &[1, 0], 1);
        let c = dz.check_iv(12);
        assert!(c.all_certified());
        let vals: Vec<i64> = c.steps.iter().map(|s| s.pairing_lambda0).collect();
        assert_eq!(vals, (1..=12).collect::<Vec<i64>>());
        assert_eq!(c.steps[0].probe.as_deref(), Some("L0"));
    }

    #[test]
    fn theorem_small() {
        let dz = demazure(2, 1, &[1, 0], 1);
        for k in 0..=4 {
            let r = dz.verify_theorem(k).unwrap();
            assert!(r.equal, "{r:?}");
        }
        assert_eq!(dz.verify_theorem(0).unwrap().recursive_size, 1);
    }

    #[test]
    fn cardinality_law() {
        for (n, l, lam, kappa) in [(2, 2, vec![2, 0], 1), (2, 2, vec![1, 1], 2), (3, 1, vec![1, 0, 0], 1)] {
            let dz = demazure(n, l, &lam, kappa);
            let size_b = SymTensor::new(n, l).cardinality();
            let chain = dz.recursive_chain(6, 1).unwrap();
            for (k, s) in chain.iter().enumerate().skip(1) {
                let (j, a) = dz.table.split(k);
                if j >= kappa {
                    let mixed = dz.tower(j, j - kappa + 1, a).unwrap().len();
                    assert_eq!(s.len(), mixed * size_b.pow((j - kappa) as u32), "k={k}");
                }
            }
        }
    }

    #[test]
    fn sl2_lambda0_counts() {
        for l in 1..=2u32 {
            let dz = demazure(2, l, &[l as i64, 0], 1);
            let chain = dz.recursive_chain(5, 1).unwrap();
            for (k, s) in chain.iter().enumerate() {
                assert_eq!(s.len(), (l as usize + 1).pow(k as u32));
            }
        }
    }

    #[test]
    fn lemma_examples() {
        let a = TensorWord::singleton(BoxElem::new(vec![1, 0]));
        let b = TensorWord::singleton(BoxElem::new(vec![0, 1]));
        let w = lemma_pq(&a, &b, 1, 1).unwrap();
        assert_eq!((w.p, w.q, w.first_case), (2, 1, false));
        let w = lemma_pq(&a, &a, 1, 1).unwrap();
        assert_eq!((w.p, w.q, w.first_case), (1, 0, true));
        assert!(matches!(lemma_pq(&b, &a, 1, 1), Err(DemazureError::Precondition(_))));
    }
}
