//! Characters of Demazure crystals, Schur functions and Kostka–Foulkes
//! polynomials.
//!
//! Kostka–Foulkes polynomials `K_{μ(l^L)}(q)` are computed two ways: as a
//! 1D sum over classically highest words of `(B^l)^{⊗L}` graded by the
//! energy, and from the charge statistic on semistandard tableaux.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::crystal::{all_words, classical_highest, CrystalElem};
use crate::demazure::{Demazure, DemazureError, DemazureSet, ReflectionTable};
use crate::energy::{EnergyError, EnergyTable, Path, PathModel};
use crate::lattice::{AffineWeight, ClassicalWeight};
use crate::symtensor::{BoxElem, SymTensor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Energy(#[from] EnergyError),
    #[error(transparent)]
    Demazure(#[from] DemazureError),
}

/// A finitely supported map from exponent vectors to integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentTable {
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(exp: Vec<i64>) -> Self {
        let mut t = Self::new();
        t.add_term(exp, 1);
        t
    }

    pub fn add_term(&mut self, exp: Vec<i64>, coef: i64) {
        if coef == 0 {
            return;
        }
        let c = self.terms.entry(exp.clone()).or_insert(0);
        *c += coef;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: &[i64]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients (value at all variables = 1).
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, rhs: &LaurentTable) -> LaurentTable {
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> LaurentTable {
        let mut out = LaurentTable::new();
        for (e, &k) in &self.terms {
            out.add_term(e.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, rhs: &LaurentTable) -> LaurentTable {
        let mut out = LaurentTable::new();
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &rhs.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: usize, one_key_len: usize) -> LaurentTable {
        (0..k).fold(LaurentTable::monomial(vec![0; one_key_len]), |acc, _| acc.mul(self))
    }

    /// Substitute exponents through `f`, collecting like terms.
    pub fn map_exponents(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> LaurentTable {
        let mut out = LaurentTable::new();
        for (e, &c) in &self.terms {
            out.add_term(f(e), c);
        }
        out
    }

    /// First exponent (in canonical order) whose coefficients differ.
    pub fn first_difference(&self, rhs: &LaurentTable) -> Option<(Vec<i64>, i64, i64)> {
        let mut keys: Vec<&Vec<i64>> = self.terms.keys().chain(rhs.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .find(|k| self.coeff(k) != rhs.coeff(k))
            .map(|k| (k.clone(), self.coeff(k), rhs.coeff(k)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter().map(|(e, c)| json!({ "exp": e, "coef": c })).collect::<Vec<_>>()
        })
    }
}

impl fmt::Display for LaurentTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e.iter().map(i64::to_string).collect();
                format!("{c}*[{}]", mono.join(","))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// A Laurent polynomial in `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    terms: BTreeMap<i64, i64>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    pub fn q_pow(e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, 1);
        p
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coef: i64) {
        if coef == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coef;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|&c| c > 0)
    }

    /// Multiply by `q^c`.
    pub fn shift(&self, c: i64) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(e, k)| (e + c, *k)).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.terms.iter()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter().map(|(e, c)| json!({ "exp": e, "coef": c })).collect::<Vec<_>>()
        })
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, &c) in self.terms.iter().rev() {
            let (sign, a) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coef = if a == 1 && e != 0 { String::new() } else { a.to_string() };
            match e {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coef}q")?,
                _ => write!(f, "{coef}q^{e}")?,
            }
        }
        Ok(())
    }
}

fn weight_key(w: &ClassicalWeight) -> Vec<i64> {
    w.0.clone()
}

/// `Σ_p e^{wt p}` with the affine weight of each path; keys are
/// `(lam_0, …, lam_{n-1}, del)`.
pub fn ch_full(set: &DemazureSet, model: &PathModel, energy: &EnergyTable) -> LaurentTable {
    let mut out = LaurentTable::new();
    for p in &set.elems {
        let w = model.path_weight(p, energy);
        let mut key = w.lam.clone();
        key.push(w.del);
        out.add_term(key, 1);
    }
    out
}

/// Classical character `Σ_p e^{cl wt p}` keyed by `Λ` coordinates.
pub fn clch(set: &DemazureSet, model: &PathModel) -> LaurentTable {
    let mut out = LaurentTable::new();
    for p in &set.elems {
        out.add_term(weight_key(&model.wt_word_classical(p)), 1);
    }
    out
}

/// Drop the trailing `δ` coordinate of a full character (`q = 1`).
pub fn specialize_q1(full: &LaurentTable) -> LaurentTable {
    full.map_exponents(|e| e[..e.len() - 1].to_vec())
}

fn word_character<'a>(words: impl IntoIterator<Item = &'a crate::crystal::TensorWord<BoxElem>>, n: usize) -> LaurentTable {
    let mut out = LaurentTable::new();
    for w in words {
        let wt = w.factors.iter().fold(ClassicalWeight::zero(n), |acc, b| &acc + &b.weight());
        out.add_term(weight_key(&wt), 1);
    }
    out
}

/// `ch B^l` keyed by `Λ` coordinates.
pub fn ch_b(crystal: &SymTensor) -> LaurentTable {
    let mut out = LaurentTable::new();
    for (w, c) in crystal.character() {
        out.add_term(weight_key(&w), c as i64);
    }
    out
}

/// The product form of the classical character:
/// `e^{λ_j} ch B_a^{(j,…,1)}` for `j < κ`, else
/// `e^{λ_j} ch B_a^{(j,…,j-κ+1)} (ch B)^{j-κ}`.
pub fn clch_factorized(dz: &Demazure, k: usize) -> Result<LaurentTable, DemazureError> {
    let n = dz.model.n();
    if k == 0 {
        return Ok(LaurentTable::monomial(weight_key(&dz.model.lambda)));
    }
    let (j, a) = dz.table.split(k);
    let kappa = dz.table.kappa;
    let head = LaurentTable::monomial(weight_key(&dz.model.lambda_k(j)));
    if j < kappa {
        let tower = dz.tower(j, 1, a)?;
        return Ok(head.mul(&word_character(&tower, n)));
    }
    let tower = dz.tower(j, j - kappa + 1, a)?;
    let free = ch_b(&dz.model.crystal).pow(j - kappa, n);
    Ok(head.mul(&word_character(&tower, n)).mul(&free))
}

/// Partitions of `total` with at most `max_parts` parts, largest first.
pub fn partitions(total: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn go(rem: u32, max_part: u32, parts_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=rem.min(max_part)).rev() {
            cur.push(p);
            go(rem - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, total, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Semistandard tableaux of shape `shape` with entries in `1..=n`, as rows.
pub fn ssyt(shape: &[u32], n: u32) -> Vec<Vec<Vec<u32>>> {
    fn fill(shape: &[u32], n: u32, rows: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        let r = rows.len();
        if r == shape.len() {
            out.push(rows.clone());
            return;
        }
        let mut row = Vec::with_capacity(shape[r] as usize);
        fill_row(shape, n, rows, &mut row, out);
    }
    fn fill_row(shape: &[u32], n: u32, rows: &mut Vec<Vec<u32>>, row: &mut Vec<u32>, out: &mut Vec<Vec<Vec<u32>>>) {
        let r = rows.len();
        let c = row.len();
        if c == shape[r] as usize {
            rows.push(row.clone());
            fill(shape, n, rows, out);
            rows.pop();
            return;
        }
        let lo_row = row.last().copied().unwrap_or(1);
        let lo_col = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=n {
            row.push(v);
            fill_row(shape, n, rows, row, out);
            row.pop();
        }
    }
    let shape: Vec<u32> = shape.iter().copied().filter(|&p| p > 0).collect();
    let mut out = Vec::new();
    fill(&shape, n, &mut Vec::new(), &mut out);
    out
}

fn content(tableau: &[Vec<u32>], n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n];
    for &v in tableau.iter().flatten() {
        c[v as usize - 1] += 1;
    }
    c
}

/// `s_μ(x_1, …, x_n)` keyed by exponent vectors of length `n`.
pub fn schur(mu: &[u32], n: usize) -> LaurentTable {
    let mut out = LaurentTable::new();
    if mu.iter().filter(|&&p| p > 0).count() > n {
        return out;
    }
    for t in ssyt(mu, n as u32) {
        out.add_term(content(&t, n), 1);
    }
    out
}

/// Row reading word, bottom row first.
pub fn reading_word(tableau: &[Vec<u32>]) -> Vec<u32> {
    tableau.iter().rev().flatten().copied().collect()
}

/// Charge of a word whose content is a partition.
pub fn charge(word: &[u32]) -> i64 {
    let mut letters: Vec<Option<u32>> = word.iter().copied().map(Some).collect();
    let mut total = 0i64;
    loop {
        let present: Vec<u32> = letters.iter().flatten().copied().collect();
        if present.is_empty() {
            return total;
        }
        let top = *present.iter().max().expect("nonempty");
        let len = letters.len();
        // scan leftward cyclically from the right end
        let mut pos = len;
        let mut index = 0i64;
        let mut picked = Vec::with_capacity(top as usize);
        for r in 1..=top {
            let mut wrapped = false;
            let mut p = pos;
            let found = loop {
                if p == 0 {
                    if wrapped {
                        break None;
                    }
                    wrapped = true;
                    p = len;
                }
                p -= 1;
                if letters[p] == Some(r) {
                    break Some(p);
                }
            };
            let Some(at) = found else {
                panic!("word content is not a partition: letter {r} missing");
            };
            if r > 1 && (wrapped || at > pos) {
                index += 1;
            }
            total += index;
            picked.push(at);
            pos = at;
        }
        for p in picked {
            letters[p] = None;
        }
    }
}

/// `K_{μν}(q) = Σ_T q^{charge(T)}` over SSYT of shape `μ` and content `ν`.
pub fn kostka_charge(mu: &[u32], nu: &[u32]) -> QPoly {
    let nu: Vec<u32> = nu.iter().copied().filter(|&p| p > 0).collect();
    let n = nu.len();
    let mut out = QPoly::zero();
    if mu.iter().sum::<u32>() != nu.iter().sum::<u32>() || n == 0 {
        return out;
    }
    let target: Vec<i64> = nu.iter().map(|&x| i64::from(x)).collect();
    for t in ssyt(mu, n as u32) {
        if content(&t, n) == target {
            out.add_term(charge(&reading_word(&t)), 1);
        }
    }
    out
}

/// The energy used in the 1D sum: `Ĥ = H − min H`, so that `Ĥ ≥ 0` and
/// the lowest value is 0.
pub fn normalized_energy(energy: &EnergyTable, b: &BoxElem, b2: &BoxElem) -> i64 {
    energy.get(b, b2) - energy.min_value()
}

/// `Σ q^{Σ_{j=1}^{L-1} j Ĥ(b_{j+1} ⊗ b_j)}` over classically highest words
/// `b_L ⊗ ⋯ ⊗ b_1` of `(B^l)^{⊗L}` whose content is `μ`.
pub fn kostka_1dsum(mu: &[u32], n: usize, l: u32, big_l: usize, energy: &EnergyTable) -> QPoly {
    let mut out = QPoly::zero();
    let parts: Vec<u32> = mu.iter().copied().filter(|&p| p > 0).collect();
    if parts.len() > n || parts.iter().sum::<u32>() != l * big_l as u32 {
        return out;
    }
    let mut target = vec![0i64; n];
    for (i, &p) in parts.iter().enumerate() {
        target[i] = i64::from(p);
    }
    let words = all_words(&SymTensor::new(n, l).elements(), big_l);
    for (w, _) in classical_highest(&words) {
        if word_content(&w.factors, n) != target {
            continue;
        }
        let exp: i64 = (1..big_l)
            .map(|j| j as i64 * normalized_energy(energy, w.component(j + 1), w.component(j)))
            .sum();
        out.add_term(exp, 1);
    }
    out
}

/// Number of letters `i` over all factors.
pub fn word_content(factors: &[BoxElem], n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n];
    for b in factors {
        for (i, &x) in b.coords().iter().enumerate() {
            c[i] += i64::from(x);
        }
    }
    c
}

/// Number of classically highest words of content `μ` in `(B^l)^{⊗L}`.
pub fn highest_word_count(mu: &[u32], n: usize, l: u32, big_l: usize) -> usize {
    let mut target = vec![0i64; n];
    for (i, &p) in mu.iter().filter(|&&p| p > 0).enumerate() {
        if i >= n {
            return 0;
        }
        target[i] = i64::from(p);
    }
    let words = all_words(&SymTensor::new(n, l).elements(), big_l);
    classical_highest(&words)
        .into_iter()
        .filter(|(w, _)| word_content(&w.factors, n) == target)
        .count()
}

/// Write a level-zero classical weight as `-Σ_{i=1}^{n-1} c_i ᾱ_i` and
/// return `(c_1, …, c_{n-1})`.
pub fn root_coordinates(v: &[i64]) -> Result<Vec<i64>, CharsError> {
    let n = v.len();
    if v.iter().sum::<i64>() != 0 {
        return Err(CharsError::Domain(format!("weight {v:?} is not of level zero")));
    }
    // v_j = c_{j-1} - 2c_j + c_{j+1} with c_0 = c_n = 0; c_j = A_j + j c_1
    let mut a = vec![0i64; n + 1];
    for j in 1..n {
        a[j + 1] = 2 * a[j] - a[j - 1] + v[j];
    }
    if a[n] % n as i64 != 0 {
        return Err(CharsError::Domain(format!("weight {v:?} is outside the root lattice")));
    }
    let c1 = -a[n] / n as i64;
    Ok((1..n).map(|j| a[j] + j as i64 * c1).collect())
}

/// `E_0 = (lL/2)(L/n − 1)`.
pub fn e0(n: usize, l: u32, big_l: usize) -> Result<i64, CharsError> {
    let num = i64::from(l) * big_l as i64 * (big_l as i64 - n as i64);
    let den = 2 * n as i64;
    if num % den != 0 {
        return Err(CharsError::Domain(format!("E_0 is not an integer for n={n}, l={l}, L={big_l}")));
    }
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KirillovReport {
    pub n: usize,
    pub l: u32,
    #[serde(rename = "L")]
    pub big_l: usize,
    pub e0: i64,
    pub pass: bool,
    /// `(exponent [z_1..z_{n-1}, q], lhs coefficient, rhs coefficient)`.
    pub first_difference: Option<(Vec<i64>, i64, i64)>,
    #[serde(skip)]
    pub lhs: LaurentTable,
    #[serde(skip)]
    pub rhs: LaurentTable,
    pub kostka: Vec<(Vec<u32>, String)>,
}

impl KirillovReport {
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["lhs"] = self.lhs.to_json();
        v["rhs"] = self.rhs.to_json();
        v
    }
}

/// `e^{-lΛ_0} ch B_{w^{(Ld)}}(lΛ_0)` as a Laurent polynomial in
/// `z_1, …, z_{n-1}, q` with `z_i = e^{-α_i}`, `q = e^{-δ}`.
pub fn kirillov_lhs(n: usize, l: u32, big_l: usize, cap: usize) -> Result<LaurentTable, CharsError> {
    let mut lam = vec![0i64; n];
    lam[0] = i64::from(l);
    let model = PathModel::new(n, l, ClassicalWeight(lam)).map_err(|e| CharsError::Domain(e.to_string()))?;
    let energy = EnergyTable::build(n, l)?;
    let dz = Demazure::new(model.clone(), ReflectionTable::sl_n(n))?.with_cap(cap);
    let k = big_l * dz.table.d;
    let set = dz.recursive(k, dz.default_depth(k))?;
    let base = model.lambda.af();
    let mut out = LaurentTable::new();
    for p in &set.elems {
        let w: AffineWeight = &model.path_weight(p, &energy) - &base;
        let mut key = root_coordinates(&w.lam)?;
        key.push(-w.del);
        out.add_term(key, 1);
    }
    Ok(out)
}

/// `Σ_μ q^{-E_0} K_{μ(l^L)}(q) s_μ(x)` restricted to `x_1⋯x_n = 1`,
/// with `z_i = x_{i+1}/x_i`.
pub fn kirillov_rhs(
    n: usize,
    l: u32,
    big_l: usize,
    kostka: &dyn Fn(&[u32]) -> QPoly,
) -> Result<(LaurentTable, Vec<KostkaRow>), CharsError> {
    let total = l as usize * big_l;
    if !total.is_multiple_of(n) {
        return Err(CharsError::Domain(format!("n = {n} does not divide lL = {total}")));
    }
    let shift = e0(n, l, big_l)?;
    let per_var = (total / n) as i64;
    let mut out = LaurentTable::new();
    let mut used = Vec::new();
    for mu in partitions(total as u32, n) {
        let k = kostka(&mu);
        let s = schur(&mu, n).map_exponents(|beta| {
            (1..n)
                .map(|j| beta[j..].iter().sum::<i64>() - (n - j) as i64 * per_var)
                .collect()
        });
        for (e, c) in k.iter() {
            let term = s.map_exponents(|z| {
                let mut key = z.to_vec();
                key.push(e - shift);
                key
            });
            out = out.add(&term.scale(*c));
        }
        used.push((mu, k));
    }
    Ok((out, used))
}

/// A partition with the Kostka polynomial used for it.
pub type KostkaRow = (Vec<u32>, QPoly);

pub fn kirillov_check(n: usize, l: u32, big_l: usize) -> Result<KirillovReport, CharsError> {
    kirillov_check_with(n, l, big_l, crate::demazure::DEFAULT_CAP, &|mu: &[u32]| {
        kostka_charge(mu, &vec![l; big_l])
    })
}

/// Kirillov's identity with a caller-supplied `K_{μ(l^L)}` (for testing the
/// failure path with perturbed coefficients).
pub fn kirillov_check_with(
    n: usize,
    l: u32,
    big_l: usize,
    cap: usize,
    kostka: &dyn Fn(&[u32]) -> QPoly,
) -> Result<KirillovReport, CharsError> {
    if big_l == 0 || !big_l.is_multiple_of(n) {
        return Err(CharsError::Domain(format!("L = {big_l} must be a positive multiple of n = {n}")));
    }
    let lhs = kirillov_lhs(n, l, big_l, cap)?;
    let (rhs, used) = kirillov_rhs(n, l, big_l, kostka)?;
    let first_difference = lhs.first_difference(&rhs);
    Ok(KirillovReport {
        n,
        l,
        big_l,
        e0: e0(n, l, big_l)?,
        pass: first_difference.is_none(),
        first_difference,
        lhs,
        rhs,
        kostka: used.into_iter().map(|(mu, k)| (mu, k.to_string())).collect(),
    })
}

/// Paths of a Demazure set as `(path, affine weight)` pairs, for export.
pub fn weighted_paths(set: &DemazureSet, model: &PathModel, energy: &EnergyTable) -> Vec<(Path, AffineWeight)> {
    set.elems.iter().map(|p| (p.clone(), model.path_weight(p, energy))).collect()
}
