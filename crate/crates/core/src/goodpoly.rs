//! Coset partitions and polynomials that are constant on each coset.
//!
//! A subgroup H of either the multiplicative group or (in characteristic 2)
//! the additive group of the field splits the field into cosets of size
//! `|H| = r + 1`. The polynomial `x^(r+1)` (multiplicative case) or the
//! subspace annihilator `prod (x - h)` (additive case) takes one value on
//! every coset. Shifting it by its value on the last block gives the
//! normalized good polynomial used by the encoder.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgroupKind {
    Multiplicative,
    Additive,
}

impl fmt::Display for SubgroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubgroupKind::Multiplicative => "multiplicative",
            SubgroupKind::Additive => "additive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    pub kind: SubgroupKind,
    /// Sorted ascending.
    pub elements: Vec<FieldElement>,
}

impl SubgroupSpec {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Checks closure (and hence the subgroup property for a finite set).
    pub fn validate(&self, field: &Field) -> Result<()> {
        let set: BTreeSet<_> = self.elements.iter().copied().collect();
        if set.len() != self.elements.len() || self.elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpec(
                "subgroup elements must be sorted and distinct".into(),
            ));
        }
        let op = |a, b| match self.kind {
            SubgroupKind::Multiplicative => field.mul(a, b),
            SubgroupKind::Additive => field.add(a, b),
        };
        if self.kind == SubgroupKind::Multiplicative && set.contains(&FieldElement::ZERO) {
            return Err(Error::InvalidSpec("multiplicative subgroup contains zero".into()));
        }
        for &a in &self.elements {
            for &b in &self.elements {
                if !set.contains(&op(a, b)) {
                    return Err(Error::InvalidSpec(format!(
                        "{} subgroup is not closed: {a} and {b}",
                        self.kind
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of points covered by all cosets of this subgroup.
    pub fn capacity(&self, field: &Field) -> usize {
        match self.kind {
            SubgroupKind::Multiplicative => field.order() as usize - 1,
            SubgroupKind::Additive => field.order() as usize,
        }
    }

    pub(crate) fn coset_of(&self, field: &Field, rep: FieldElement) -> Vec<FieldElement> {
        let mut coset: Vec<_> = self
            .elements
            .iter()
            .map(|&h| match self.kind {
                SubgroupKind::Multiplicative => field.mul(rep, h),
                SubgroupKind::Additive => field.add(rep, h),
            })
            .collect();
        coset.sort_unstable();
        coset
    }
}

/// Finds a subgroup of the given size. The multiplicative group is preferred
/// when `size | q - 1`; otherwise, in characteristic 2 with `size = 2^a`, the
/// GF(2)-span of `{1, x, ..., x^(a-1)}` is used.
pub fn find_subgroup(field: &Field, size: usize) -> Result<SubgroupSpec> {
    let q = field.order() as usize;
    let none = || Error::NoSubgroup {
        order: field.order(),
        size,
    };
    if size < 2 {
        return Err(none());
    }
    if (q - 1).is_multiple_of(size) {
        let alpha = field.primitive_element();
        let generator = field.pow(alpha, ((q - 1) / size) as u64);
        let mut elements: Vec<_> = std::iter::successors(Some(FieldElement::ONE), |&x| Some(field.mul(x, generator)))
            .take(size)
            .collect();
        elements.sort_unstable();
        return Ok(SubgroupSpec {
            kind: SubgroupKind::Multiplicative,
            elements,
        });
    }
    if field.is_binary() && size.is_power_of_two() && size <= q {
        // Span of the first a basis vectors is exactly the integers 0..2^a.
        let elements = (0..size as u64).map(|v| field.reduce(v)).collect();
        return Ok(SubgroupSpec {
            kind: SubgroupKind::Additive,
            elements,
        });
    }
    Err(none())
}

/// The first `m` cosets of `subgroup` in order of their minimum element,
/// each sorted ascending.
pub fn coset_partition(field: &Field, subgroup: &SubgroupSpec, m: usize) -> Result<Vec<Vec<FieldElement>>> {
    let available = subgroup.capacity(field) / subgroup.size();
    if m > available {
        return Err(Error::TooManyBlocks {
            requested: m,
            available,
        });
    }
    let mut covered = vec![false; field.order() as usize];
    let mut blocks = Vec::with_capacity(m);
    let start = match subgroup.kind {
        SubgroupKind::Multiplicative => 1,
        SubgroupKind::Additive => 0,
    };
    for rep in field.elements().skip(start) {
        if blocks.len() == m {
            break;
        }
        if covered[rep.value() as usize] {
            continue;
        }
        let coset = subgroup.coset_of(field, rep);
        for x in &coset {
            covered[x.value() as usize] = true;
        }
        blocks.push(coset);
    }
    Ok(blocks)
}

/// Degree-`|H|` polynomial constant on every coset of `subgroup`.
pub fn good_polynomial(field: &Field, subgroup: &SubgroupSpec) -> Polynomial {
    match subgroup.kind {
        SubgroupKind::Multiplicative => Polynomial::monomial(FieldElement::ONE, subgroup.size()),
        SubgroupKind::Additive => Polynomial::from_roots(field, &subgroup.elements),
    }
}

/// Blocks of the parent evaluation set together with the removed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    pub blocks: Vec<Vec<FieldElement>>,
    /// Points of the last block that are shortened away, sorted.
    pub removed: Vec<FieldElement>,
}

impl PartitionSpec {
    /// Removes the `t` largest elements of the last block.
    pub fn new(blocks: Vec<Vec<FieldElement>>, t: usize) -> Result<PartitionSpec> {
        let last = blocks
            .last()
            .ok_or_else(|| Error::InvalidSpec("partition has no blocks".into()))?;
        if t > last.len() {
            return Err(Error::InvalidSpec(format!(
                "cannot remove {t} points from a block of size {}",
                last.len()
            )));
        }
        let mut sorted = last.clone();
        sorted.sort_unstable();
        let removed = sorted[sorted.len() - t..].to_vec();
        let spec = PartitionSpec { blocks, removed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let size = self.blocks.first().map_or(0, Vec::len);
        let mut seen = BTreeSet::new();
        for (i, block) in self.blocks.iter().enumerate() {
            if block.len() != size || size == 0 {
                return Err(Error::InvalidSpec(format!("block {i} has size {}", block.len())));
            }
            if block.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSpec(format!("block {i} is not sorted")));
            }
            for &x in block {
                if !seen.insert(x) {
                    return Err(Error::InvalidSpec(format!("element {x} appears in two blocks")));
                }
            }
        }
        let last = self.blocks.last().map(Vec::as_slice).unwrap_or_default();
        if self.removed.windows(2).any(|w| w[0] >= w[1]) || !self.removed.iter().all(|b| last.contains(b)) {
            return Err(Error::InvalidSpec(
                "removed points must be a sorted subset of the last block".into(),
            ));
        }
        Ok(())
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn last_block(&self) -> &[FieldElement] {
        self.blocks.last().expect("partition has at least one block")
    }

    /// Parent length `m(r+1)`.
    pub fn n_bar(&self) -> usize {
        self.blocks.len() * self.block_size()
    }

    /// Sorted evaluation points of the shortened code.
    pub fn evaluation_set(&self) -> Vec<FieldElement> {
        let mut pts: Vec<_> = self
            .blocks
            .iter()
            .flatten()
            .copied()
            .filter(|x| !self.removed.contains(x))
            .collect();
        pts.sort_unstable();
        pts
    }

    pub fn block_of(&self, x: FieldElement) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodPolynomial {
    pub g_raw: Polynomial,
    pub gamma: FieldElement,
    pub g_tilde: Polynomial,
    /// Value of `g_tilde` on each block; the last entry is zero.
    pub block_values: Vec<FieldElement>,
}

/// Shifts `g` by its value on the last block so that it vanishes there.
pub fn normalize_gamma(field: &Field, g: &Polynomial, partition: &PartitionSpec) -> Result<GoodPolynomial> {
    let mut raw_values = Vec::with_capacity(partition.blocks.len());
    for (i, block) in partition.blocks.iter().enumerate() {
        let value = g.eval(field, block[0]);
        if let Some(&bad) = block.iter().find(|&&x| g.eval(field, x) != value) {
            return Err(Error::NotConstantOnBlocks {
                block: i,
                element: bad.value(),
            });
        }
        raw_values.push(value);
    }
    let gamma = *raw_values.last().expect("partition has at least one block");
    let g_tilde = g.sub(&Polynomial::constant(gamma), field);
    let block_values = raw_values.iter().map(|&v| field.sub(v, gamma)).collect();
    Ok(GoodPolynomial {
        g_raw: g.clone(),
        gamma,
        g_tilde,
        block_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn els(f: &Field, vs: &[u64]) -> Vec<FieldElement> {
        vs.iter().map(|&v| f.element(v).unwrap()).collect()
    }

    #[test]
    fn multiplicative_subgroup_gf13() {
        let f = Field::new(13).unwrap();
        let h = find_subgroup(&f, 4).unwrap();
        assert_eq!(h.kind, SubgroupKind::Multiplicative);
        // Oracle: all y with y^4 = 1.
        let roots: Vec<_> = f.elements().filter(|&y| f.pow(y, 4) == FieldElement::ONE).collect();
        assert_eq!(h.elements, roots);
        assert_eq!(h.elements, els(&f, &[1, 5, 8, 12]));
        h.validate(&f).unwrap();
    }

    #[test]
    fn additive_subgroup_gf16() {
        let f = Field::new(16).unwrap();
        let h = find_subgroup(&f, 4).unwrap();
        assert_eq!(h.kind, SubgroupKind::Additive);
        assert_eq!(h.elements, els(&f, &[0, 1, 2, 3]));
        for &a in &h.elements {
            for &b in &h.elements {
                assert!(h.elements.contains(&f.add(a, b)));
            }
        }
    }

    #[test]
    fn kind_selection_gf4() {
        let f = Field::new(4).unwrap();
        assert_eq!(find_subgroup(&f, 3).unwrap().kind, SubgroupKind::Multiplicative);
        assert_eq!(find_subgroup(&f, 2).unwrap().kind, SubgroupKind::Additive);
    }

    #[test]
    fn no_subgroup() {
        let f = Field::new(13).unwrap();
        assert!(matches!(
            find_subgroup(&f, 5),
            Err(Error::NoSubgroup { order: 13, size: 5 })
        ));
        assert!(matches!(find_subgroup(&f, 1), Err(Error::NoSubgroup { .. })));
        let f = Field::new(16).unwrap();
        assert!(matches!(find_subgroup(&f, 6), Err(Error::NoSubgroup { .. })));
    }

    #[test]
    fn cosets_gf13() {
        let f = Field::new(13).unwrap();
        let h = find_subgroup(&f, 4).unwrap();
        let blocks = coset_partition(&f, &h, 3).unwrap();
        // Oracle: multiply H by representatives 1, 2, 4.
        let expected: Vec<Vec<_>> = [1u64, 2, 4]
            .iter()
            .map(|&rep| {
                let mut c: Vec<_> = h.elements.iter().map(|&x| f.mul(x, f.element(rep).unwrap())).collect();
                c.sort();
                c
            })
            .collect();
        assert_eq!(blocks, expected);
        assert_eq!(
            blocks,
            vec![
                els(&f, &[1, 5, 8, 12]),
                els(&f, &[2, 3, 10, 11]),
                els(&f, &[4, 6, 7, 9])
            ]
        );
        assert!(matches!(
            coset_partition(&f, &h, 4),
            Err(Error::TooManyBlocks {
                requested: 4,
                available: 3
            })
        ));
    }

    #[test]
    fn additive_cosets_cover_gf16() {
        let f = Field::new(16).unwrap();
        let h = find_subgroup(&f, 4).unwrap();
        let blocks = coset_partition(&f, &h, 4).unwrap();
        let all: BTreeSet<_> = blocks.iter().flatten().copied().collect();
        assert_eq!(all.len(), 16);
        assert!(blocks.iter().all(|b| b.len() == 4));
    }

    #[test]
    fn good_polynomials() {
        let f = Field::new(13).unwrap();
        let h = find_subgroup(&f, 4).unwrap();
        let g = good_polynomial(&f, &h);
        assert_eq!(g, Polynomial::monomial(FieldElement::ONE, 4));
        assert!(h.elements.iter().all(|&x| g.eval(&f, x) == FieldElement::ONE));

        let f = Field::new(16).unwrap();
        let h = find_subgroup(&f, 4).unwrap();
        let g = good_polynomial(&f, &h);
        // X^4 + (x^2+x+1) X^2 + (x^2+x) X
        assert_eq!(g.coeffs(), els(&f, &[0, 0b110, 0b111, 0, 1]).as_slice());
        assert!(h.elements.iter().all(|&x| g.eval(&f, x).is_zero()));
        for block in coset_partition(&f, &h, 4).unwrap() {
            let v = g.eval(&f, block[0]);
            assert!(block.iter().all(|&x| g.eval(&f, x) == v));
        }
    }

    #[test]
    fn normalize_gf13() {
        let f = Field::new(13).unwrap();
        let h = find_subgroup(&f, 4).unwrap();
        let part = PartitionSpec::new(coset_partition(&f, &h, 3).unwrap(), 2).unwrap();
        assert_eq!(part.removed, els(&f, &[7, 9]));
        let good = normalize_gamma(&f, &good_polynomial(&f, &h), &part).unwrap();
        assert_eq!(good.gamma, f.element(9).unwrap());
        assert_eq!(good.g_tilde.coeffs(), els(&f, &[4, 0, 0, 0, 1]).as_slice());
        assert_eq!(good.block_values, els(&f, &[5, 7, 0]));

        // Already normalized: fixed point.
        let again = normalize_gamma(&f, &good.g_tilde, &part).unwrap();
        assert_eq!(again.gamma, FieldElement::ZERO);
        assert_eq!(again.g_tilde, good.g_tilde);
    }

    #[test]
    fn normalize_detects_non_coset_blocks() {
        let f = Field::new(13).unwrap();
        let blocks = vec![els(&f, &[1, 2, 3, 4]), els(&f, &[5, 6, 7, 8])];
        let part = PartitionSpec::new(blocks, 0).unwrap();
        let g = Polynomial::monomial(FieldElement::ONE, 4);
        assert!(matches!(
            normalize_gamma(&f, &g, &part),
            Err(Error::NotConstantOnBlocks { block: 0, element: 2 })
        ));
    }

    #[test]
    fn partition_rejects_overlap() {
        let f = Field::new(13).unwrap();
        let blocks = vec![els(&f, &[1, 2]), els(&f, &[2, 3])];
        assert!(PartitionSpec::new(blocks, 0).is_err());
    }

    #[test]
    fn constant_on_every_block_for_many_fields() {
        for (q, size) in [
            (13u64, 3usize),
            (13, 4),
            (16, 3),
            (16, 4),
            (16, 5),
            (17, 4),
            (17, 8),
            (256, 4),
            (256, 17),
        ] {
            let f = Field::new(q).unwrap();
            let h = find_subgroup(&f, size).unwrap();
            let m = h.capacity(&f) / size;
            let blocks = coset_partition(&f, &h, m).unwrap();
            let part = PartitionSpec::new(blocks.clone(), 1).unwrap();
            let good = normalize_gamma(&f, &good_polynomial(&f, &h), &part).unwrap();
            assert_eq!(good.g_tilde.degree().finite(), Some(size));
            for (block, &v) in blocks.iter().zip(&good.block_values) {
                assert!(block.iter().all(|&x| good.g_tilde.eval(&f, x) == v));
            }
            assert!(good.block_values.last().unwrap().is_zero());
            let rest = &good.block_values[..m - 1];
            assert!(rest.iter().all(|v| !v.is_zero()));
            // Determinism.
            assert_eq!(coset_partition(&f, &h, m).unwrap(), blocks);
        }
    }
}
