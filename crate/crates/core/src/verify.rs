//! Brute-force oracles for the properties a constructed code claims.
//!
//! Everything here works from the generator matrix or from explicit
//! evaluations, never from the degree arguments used by the encoder, so a
//! passing report is independent evidence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::predicted_distance;
use crate::construction::CodeSpec;
use crate::error::{Error, Result};
use crate::field::{lagrange_interpolate, Degree, Field, FieldElement};
use crate::linalg;
use crate::repair::decode_erasures;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub rank_ok: bool,
    pub distance_found: usize,
    pub distance_expected: usize,
    pub locality_ok: bool,
    pub shortening_ok: bool,
    pub erasure_ok: bool,
    pub enumerated_words: u64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.rank_ok
            && self.distance_found == self.distance_expected
            && self.locality_ok
            && self.shortening_ok
            && self.erasure_ok
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Cap on enumerated codewords and on erasure patterns.
    pub budget: u64,
    pub seed: u64,
    pub shortening_trials: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: 5_000_000,
            seed: 0,
            shortening_trials: 1000,
        }
    }
}

pub fn matrix_rank(field: &Field, matrix: &[Vec<FieldElement>]) -> usize {
    linalg::rank(field, matrix)
}

/// Number of nonzero messages, `q^k - 1`, if it fits the budget.
fn enumeration_size(q: usize, k: usize, budget: u64) -> Result<u64> {
    let total = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: total,
            budget: budget as u128,
        });
    }
    Ok(total as u64 - 1)
}

/// Exact minimum Hamming weight over all nonzero codewords.
///
/// The message space is walked as a base-q odometer; each step adds one
/// precomputed row difference, so a codeword costs `O(n)`. The top digit is
/// split across rayon workers.
pub fn brute_force_distance(spec: &CodeSpec, budget: u64) -> Result<usize> {
    let field = *spec.field();
    let (q, k, n) = (field.order() as usize, spec.k(), spec.n());
    enumeration_size(q, k, budget)?;
    let g = spec.generator();

    // multiples[i][v] = v * row_i
    let multiples: Vec<Vec<Vec<u32>>> = g
        .iter()
        .map(|row| {
            field
                .elements()
                .map(|v| row.iter().map(|&x| field.mul(v, x).value()).collect())
                .collect()
        })
        .collect();
    // step[i][v] = (v+1 mod q) * row_i - v * row_i
    let step: Vec<Vec<Vec<u32>>> = multiples
        .iter()
        .map(|mults| {
            (0..q)
                .map(|v| {
                    let next = &mults[(v + 1) % q];
                    next.iter()
                        .zip(&mults[v])
                        .map(|(&a, &b)| field.sub(field.reduce(a as u64), field.reduce(b as u64)).value())
                        .collect()
                })
                .collect()
        })
        .collect();

    let binary = field.is_binary();
    let order = q as u32;
    let add = move |a: u32, b: u32| -> u32 {
        if binary {
            a ^ b
        } else {
            let s = a + b;
            if s >= order {
                s - order
            } else {
                s
            }
        }
    };

    let top = k - 1;
    let best = (0..q)
        .into_par_iter()
        .map(|lead| {
            let mut word = multiples[top][lead].clone();
            let mut digits = vec![0usize; top];
            let mut best = if lead == 0 { n + 1 } else { weight(&word) };
            loop {
                // advance the odometer over digits 0..top
                let mut pos = 0;
                while pos < top {
                    let d = digits[pos];
                    for (w, &s) in word.iter_mut().zip(&step[pos][d]) {
                        *w = add(*w, s);
                    }
                    digits[pos] = (d + 1) % q;
                    if digits[pos] != 0 {
                        break;
                    }
                    pos += 1;
                }
                if pos == top {
                    break;
                }
                best = best.min(weight(&word));
            }
            best
        })
        .min()
        .unwrap_or(n + 1);
    Ok(best.min(n))
}

#[inline]
fn weight(word: &[u32]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

/// `true` iff every coordinate of every group is a linear function of the
/// other coordinates of its group, i.e. for each coordinate some dual
/// codeword supported inside the group is nonzero there.
pub fn locality_holds(field: &Field, generator: &[Vec<FieldElement>], groups: &[Vec<usize>]) -> bool {
    groups.iter().all(|cols| {
        let restricted: Vec<Vec<FieldElement>> = generator
            .iter()
            .map(|row| cols.iter().map(|&c| row[c]).collect())
            .collect();
        let dual = linalg::nullspace(field, &restricted);
        (0..cols.len()).all(|j| dual.iter().any(|y| !y[j].is_zero()))
    })
}

/// 0-based code coordinates of each repair group: full blocks, then the
/// surviving part of the last block.
pub fn repair_groups(spec: &CodeSpec) -> Vec<Vec<usize>> {
    spec.partition()
        .blocks
        .iter()
        .map(|block| block.iter().filter_map(|&x| spec.coordinate_of(x)).collect())
        .collect()
}

pub fn verify_locality(spec: &CodeSpec) -> bool {
    locality_holds(spec.field(), spec.generator(), &repair_groups(spec))
}

/// Checks that a word on the parent points (block order) vanishes on the
/// removed points and interpolates to a polynomial of degree at most
/// `k' + ceil(k'/r) - 2`.
pub fn parent_word_ok(spec: &CodeSpec, parent: &[FieldElement]) -> bool {
    let removed = &spec.partition().removed;
    let points: Vec<_> = spec.parent_points().collect();
    if parent.len() != points.len() {
        return false;
    }
    let pairs: Vec<_> = points.into_iter().zip(parent.iter().copied()).collect();
    if pairs.iter().any(|(x, v)| removed.contains(x) && !v.is_zero()) {
        return false;
    }
    match lagrange_interpolate(spec.field(), &pairs) {
        Ok(poly) => poly.degree() <= Degree::Finite(spec.params().degree_cap()),
        Err(_) => false,
    }
}

fn random_message(spec: &CodeSpec, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    let q = spec.field().order() as u64;
    (0..spec.k())
        .map(|_| spec.field().reduce(rng.gen_range(0..q)))
        .collect()
}

pub fn verify_shortening(spec: &CodeSpec, trials: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = vec![FieldElement::ZERO; spec.k()];
    std::iter::once(zero)
        .chain((0..trials).map(|_| random_message(spec, &mut rng)))
        .all(|msg| {
            let parent = spec.extend_to_parent(&msg).expect("message length is k");
            parent_word_ok(spec, &parent) && spec.restrict_parent(&parent) == spec.encode(&msg).unwrap()
        })
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Erases every `e`-subset of coordinates from a fresh random codeword and
/// checks that the message is recovered exactly.
pub fn exhaustive_erasure_test(spec: &CodeSpec, e: usize, budget: u64, seed: u64) -> Result<bool> {
    let n = spec.n();
    let patterns = binomial(n, e);
    if patterns > budget as u128 {
        return Err(Error::BudgetExceeded {
            required: patterns,
            budget: budget as u128,
        });
    }
    if e > n {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subset: Vec<usize> = (0..e).collect();
    loop {
        let msg = random_message(spec, &mut rng);
        let cw = spec.encode(&msg)?;
        let mut received: Vec<_> = cw.into_iter().map(Some).collect();
        for &j in &subset {
            received[j] = None;
        }
        match decode_erasures(spec, &received) {
            Ok(decoded) if decoded == msg => {}
            Ok(_) | Err(Error::Unrecoverable { .. }) | Err(Error::InconsistentWord) => return Ok(false),
            Err(other) => return Err(other),
        }
        // next combination in lexicographic order
        let Some(pos) = (0..e).rev().find(|&i| subset[i] < n - e + i) else {
            return Ok(true);
        };
        subset[pos] += 1;
        for i in pos + 1..e {
            subset[i] = subset[i - 1] + 1;
        }
    }
}

/// Runs every oracle. Budget errors abort the run rather than producing a
/// partial report.
pub fn verify(spec: &CodeSpec, options: &VerifyOptions) -> Result<VerificationReport> {
    let (q, k) = (spec.field().order() as usize, spec.k());
    let enumerated_words = enumeration_size(q, k, options.budget)?;
    let distance_expected = predicted_distance(spec.params()).max(0) as usize;
    let erasures = distance_expected.saturating_sub(1);
    if binomial(spec.n(), erasures) > options.budget as u128 {
        return Err(Error::BudgetExceeded {
            required: binomial(spec.n(), erasures),
            budget: options.budget as u128,
        });
    }

    let rank_ok = matrix_rank(spec.field(), spec.generator()) == k;
    let distance_found = brute_force_distance(spec, options.budget)?;
    let locality_ok = verify_locality(spec);
    let shortening_ok = verify_shortening(spec, options.shortening_trials, options.seed);
    let erasure_ok = exhaustive_erasure_test(spec, erasures, options.budget, options.seed)?;
    Ok(VerificationReport {
        rank_ok,
        distance_found,
        distance_expected,
        locality_ok,
        shortening_ok,
        erasure_ok,
        enumerated_words,
    })
}
