//! Local repair of a single coordinate and erasure decoding.
//!
//! Coordinates are 1-based in this module's public API, matching the
//! external codeword format.

use crate::construction::CodeSpec;
use crate::error::{Error, Result};
use crate::field::{lagrange_interpolate, FieldElement};
use crate::linalg::{self, Solution};

/// Sorted, distinct, 1-based erased coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ErasurePattern {
    erased: Vec<usize>,
}

impl ErasurePattern {
    pub fn new(mut erased: Vec<usize>, n: usize) -> Result<Self> {
        erased.sort_unstable();
        erased.dedup();
        if let Some(&bad) = erased.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(ErasurePattern { erased })
    }

    pub fn indices(&self) -> &[usize] {
        &self.erased
    }

    pub fn len(&self) -> usize {
        self.erased.len()
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_empty()
    }
}

/// Repair group of one coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairGroup {
    /// 0-based block index.
    pub block: usize,
    /// 1-based coordinate being repaired.
    pub target: usize,
    /// 1-based coordinates of the other group members.
    pub helpers: Vec<usize>,
    /// Removed points where every codeword polynomial vanishes.
    pub implicit_zeros: Vec<FieldElement>,
}

impl RepairGroup {
    /// Number of values a repair consults.
    pub fn locality(&self) -> usize {
        self.helpers.len() + self.implicit_zeros.len()
    }
}

pub fn locate_group(spec: &CodeSpec, i: usize) -> Result<RepairGroup> {
    let n = spec.n();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let alpha = spec.eval_points()[i - 1];
    let partition = spec.partition();
    let block = partition
        .block_of(alpha)
        .ok_or_else(|| Error::InternalInconsistency(format!("point {alpha} is in no block")))?;
    let mut helpers = Vec::with_capacity(spec.params().r);
    let mut implicit_zeros = Vec::new();
    for &x in &partition.blocks[block] {
        if x == alpha {
            continue;
        }
        match spec.coordinate_of(x) {
            Some(c) => helpers.push(c + 1),
            None => implicit_zeros.push(x),
        }
    }
    Ok(RepairGroup {
        block,
        target: i,
        helpers,
        implicit_zeros,
    })
}

/// Recovers coordinate `i` from the `r` `(point, value)` pairs of its repair
/// group by interpolating the degree `< r` restriction of the codeword
/// polynomial to the group.
pub fn repair_local(spec: &CodeSpec, i: usize, helper_values: &[(FieldElement, FieldElement)]) -> Result<FieldElement> {
    let n = spec.n();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let r = spec.params().r;
    if helper_values.len() != r {
        return Err(Error::LengthMismatch {
            expected: r,
            got: helper_values.len(),
        });
    }
    let field = spec.field();
    let restricted = lagrange_interpolate(field, helper_values)?;
    Ok(restricted.eval(field, spec.eval_points()[i - 1]))
}

/// Result of repairing a coordinate of a concrete word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repair {
    pub group: RepairGroup,
    /// The exact `(point, value)` pairs handed to [`repair_local`].
    pub consulted: Vec<(FieldElement, FieldElement)>,
    pub value: FieldElement,
}

/// Repairs coordinate `i` of `word`, reading only its repair group. The
/// value currently stored at `i` is ignored.
pub fn repair_coordinate(spec: &CodeSpec, word: &[FieldElement], i: usize) -> Result<Repair> {
    if word.len() != spec.n() {
        return Err(Error::LengthMismatch {
            expected: spec.n(),
            got: word.len(),
        });
    }
    let group = locate_group(spec, i)?;
    let points = spec.eval_points();
    let consulted: Vec<_> = group
        .helpers
        .iter()
        .map(|&c| (points[c - 1], word[c - 1]))
        .chain(group.implicit_zeros.iter().map(|&z| (z, FieldElement::ZERO)))
        .collect();
    let value = repair_local(spec, i, &consulted)?;
    Ok(Repair {
        group,
        consulted,
        value,
    })
}

/// Recovers the message from a word with erasures (`None`) by solving the
/// generator system restricted to the known coordinates.
pub fn decode_erasures(spec: &CodeSpec, received: &[Option<FieldElement>]) -> Result<Vec<FieldElement>> {
    let n = spec.n();
    if received.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: received.len(),
        });
    }
    let g = spec.generator();
    let known: Vec<usize> = (0..n).filter(|&j| received[j].is_some()).collect();
    let system: Vec<Vec<FieldElement>> = known.iter().map(|&j| g.iter().map(|row| row[j]).collect()).collect();
    let rhs: Vec<FieldElement> = known.iter().map(|&j| received[j].unwrap()).collect();
    let erased = || (0..n).filter(|&j| received[j].is_none()).map(|j| j + 1).collect();
    match linalg::solve(spec.field(), &system, &rhs) {
        Solution::Unique(msg) if msg.len() == spec.k() => Ok(msg),
        Solution::Unique(_) | Solution::Underdetermined => Err(Error::Unrecoverable { erased: erased() }),
        Solution::Inconsistent => Err(Error::InconsistentWord),
    }
}
