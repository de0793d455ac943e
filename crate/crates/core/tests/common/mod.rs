#![allow(dead_code)]

use demazure_paths::crystal::{all_words, CrystalElem, TensorWord};
use demazure_paths::demazure::lemma_pq;
use demazure_paths::lattice::ClassicalWeight;
use demazure_paths::symtensor::{BoxElem, SymTensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Word = TensorWord<BoxElem>;

/// Simple root `α_i` restricted to the classical part, written out by hand.
pub fn alpha_cl(i: usize, n: usize) -> ClassicalWeight {
    let mut v = vec![0i64; n];
    v[i] += 2;
    v[(i + n - 1) % n] -= 1;
    v[(i + 1) % n] -= 1;
    ClassicalWeight(v)
}

pub fn words_up_to(n: usize, l: u32, max_len: usize) -> Vec<Word> {
    let alphabet = SymTensor::new(n, l).elements();
    (1..=max_len).flat_map(|len| all_words(&alphabet, len)).collect()
}

fn e_iter<E: CrystalElem>(b: &E, i: usize) -> u32 {
    let mut m = 0;
    let mut cur = b.clone();
    while let Some(next) = cur.e(i) {
        cur = next;
        m += 1;
    }
    m
}

fn f_iter<E: CrystalElem>(b: &E, i: usize) -> u32 {
    let mut m = 0;
    let mut cur = b.clone();
    while let Some(next) = cur.f(i) {
        cur = next;
        m += 1;
    }
    m
}

fn sigma_word(w: &Word) -> Word {
    TensorWord::new(w.factors.iter().map(BoxElem::sigma).collect())
}

fn flatten(w: &TensorWord<TensorWord<BoxElem>>) -> Word {
    TensorWord::new(w.factors.iter().flat_map(|t| t.factors.iter().cloned()).collect())
}

/// All two-block bracketings of a word, as nested words.
fn bracketings(w: &Word) -> Vec<TensorWord<TensorWord<BoxElem>>> {
    (1..w.len())
        .map(|cut| {
            TensorWord::new(vec![
                TensorWord::new(w.factors[..cut].to_vec()),
                TensorWord::new(w.factors[cut..].to_vec()),
            ])
        })
        .collect()
}

/// Check the crystal axioms on one headless word; returns violation messages.
pub fn axiom_violations_word(w: &Word, n: usize) -> Vec<String> {
    let mut out = Vec::new();
    let wt = w.classical_weight();
    for i in 0..n {
        let e = w.e(i);
        let f = w.f(i);
        if let Some(t) = &f {
            if t.e(i).as_ref() != Some(w) {
                out.push(format!("e_{i} f_{i} != id on {w}"));
            }
            if t.classical_weight() != &wt - &alpha_cl(i, n) {
                out.push(format!("wt f_{i} != wt - alpha on {w}"));
            }
        }
        if let Some(t) = &e {
            if t.f(i).as_ref() != Some(w) {
                out.push(format!("f_{i} e_{i} != id on {w}"));
            }
        }
        if w.eps(i) != e_iter(w, i) {
            out.push(format!("eps_{i} is not the e-string length on {w}"));
        }
        if w.phi(i) != f_iter(w, i) {
            out.push(format!("phi_{i} is not the f-string length on {w}"));
        }
        if i64::from(w.phi(i)) - i64::from(w.eps(i)) != wt.pair(i) {
            out.push(format!("phi_{i} - eps_{i} != <wt, h_{i}> on {w}"));
        }
        // σ shifts colours down by one
        let s = sigma_word(w);
        let j = (i + n - 1) % n;
        if s.f(j) != f.as_ref().map(sigma_word) || s.e(j) != e.as_ref().map(sigma_word) {
            out.push(format!("sigma does not intertwine colour {i} on {w}"));
        }
        for nested in bracketings(w) {
            if nested.f(i).map(|x| flatten(&x)) != f || nested.e(i).map(|x| flatten(&x)) != e {
                out.push(format!("bracketing changes f_{i}/e_{i} on {w}"));
            }
            if nested.eps(i) != w.eps(i) || nested.phi(i) != w.phi(i) {
                out.push(format!("bracketing changes eps/phi_{i} on {w}"));
            }
        }
    }
    out
}

/// Exhaustive axiom scan over words of length ≤ `max_len`; returns
/// `(words checked, violations)`.
pub fn axiom_scan(n: usize, l: u32, max_len: usize) -> (usize, Vec<String>) {
    let words = words_up_to(n, l, max_len);
    let mut bad = Vec::new();
    for w in &words {
        bad.extend(axiom_violations_word(w, n));
    }
    (words.len(), bad)
}

fn pq_on(b1: &Word, b2: &Word, i: usize, bad: &mut Vec<String>) -> usize {
    let mut checked = 0;
    for m in 0..=b1.phi(i) {
        checked += 1;
        if let Err(e) = lemma_pq(b1, b2, i, m) {
            bad.push(e.to_string());
        }
    }
    checked
}

/// Every pair of words of length ≤ 2 over `B^2` (n = 2), all i and m.
pub fn pq_exhaustive_sl2() -> (usize, Vec<String>) {
    let words = words_up_to(2, 2, 2);
    let mut bad = Vec::new();
    let mut checked = 0;
    for b1 in &words {
        for b2 in &words {
            for i in 0..2 {
                checked += pq_on(b1, b2, i, &mut bad);
            }
        }
    }
    (checked, bad)
}

/// `cases` random `(b1, b2, i, m)` with words of length 1..=3 over `B^2`, n = 3.
pub fn pq_random_sl3(cases: usize, seed: u64) -> (usize, Vec<String>) {
    let alphabet = SymTensor::new(3, 2).elements();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = |rng: &mut ChaCha8Rng| {
        let len = rng.gen_range(1..=3);
        TensorWord::new((0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone()).collect())
    };
    let mut bad = Vec::new();
    for _ in 0..cases {
        let b1 = word(&mut rng);
        let b2 = word(&mut rng);
        let i = rng.gen_range(0..3);
        let m = rng.gen_range(0..=b1.phi(i));
        if let Err(e) = lemma_pq(&b1, &b2, i, m) {
            bad.push(e.to_string());
        }
    }
    (cases, bad)
}
