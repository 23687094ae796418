//! Parameter validation, message layout and the evaluation encoder.
//!
//! A message is split into coefficients `a[i][j]` of `g(x)^j * x^i` and
//! coefficients `b[m]` of `h_B(x) * x^m`, where `g` is the normalized good
//! polynomial (zero on the last block) and `h_B` vanishes on the points
//! removed from the last block. The codeword is the evaluation of the
//! resulting polynomial on the remaining points, so the code is the
//! shortening of a full-length code on `m(r+1)` points.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Polynomial};
use crate::goodpoly::{
    coset_partition, find_subgroup, good_polynomial, normalize_gamma, GoodPolynomial, PartitionSpec, SubgroupSpec,
};
use crate::linalg::{self, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub field: Field,
    pub q: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// Size of the last repair group; `r + 1` when `(r+1) | n`.
    pub s: usize,
    /// Points removed from the last block, `r + 1 - s`.
    pub t: usize,
    pub m: usize,
    pub n_bar: usize,
    pub k_prime: usize,
}

impl CodeParams {
    /// `true` when `(r+1) | n`, i.e. nothing is shortened.
    pub fn is_divisible(&self) -> bool {
        self.t == 0
    }

    /// Upper bound on `deg f_a`: `k' + ceil(k'/r) - 2`.
    pub fn degree_cap(&self) -> usize {
        self.k_prime + self.k_prime.div_ceil(self.r) - 2
    }
}

/// Validates `(q, n, k, r)` and derives the shortening parameters.
pub fn validate_params(q: u64, n: usize, k: usize, r: usize) -> Result<CodeParams> {
    let field = Field::new(q)?;
    if k == 0 || r == 0 {
        return Err(Error::InvalidParams("k and r must be positive".into()));
    }
    if r >= n {
        return Err(Error::InvalidParams(format!(
            "locality r = {r} must be less than n = {n}"
        )));
    }
    let (s, t, m) = match n % (r + 1) {
        1 => return Err(Error::SEqualsOne),
        0 => (r + 1, 0, n / (r + 1)),
        s => (s, r + 1 - s, n.div_ceil(r + 1)),
    };
    let max_k = n - n.div_ceil(r + 1);
    if k > max_k {
        return Err(Error::RateBoundViolated { k, max: max_k });
    }
    let subgroup = find_subgroup(&field, r + 1)?;
    let n_bar = m * (r + 1);
    let available = subgroup.capacity(&field);
    if n_bar > available {
        return Err(Error::FieldTooSmall {
            order: field.order(),
            needed: n_bar,
            available,
        });
    }
    Ok(CodeParams {
        field,
        q: q as usize,
        n,
        k,
        r,
        s,
        t,
        m,
        n_bar,
        k_prime: k + t,
    })
}

/// Slot structure of a message: `a[i][j]` slots followed by `b` slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageLayout {
    /// `(i, j)` with `0 <= i < r`, `1 <= j <= S(i)`, lexicographic.
    pub a_slots: Vec<(usize, usize)>,
    pub b_count: usize,
    /// `S(0), ..., S(r-1)`.
    pub s_values: Vec<usize>,
}

impl MessageLayout {
    pub fn len(&self) -> usize {
        self.a_slots.len() + self.b_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Lays out `k` message symbols.
///
/// With `k >= s - 1` there are `s - 1` b-slots and
/// `S(i) = floor(k'/r) - [i >= k' mod r]` a-slots per `i`. With `k < s - 1`
/// the message only fills `b_0 .. b_{k-1}`.
pub fn message_layout(params: &CodeParams) -> MessageLayout {
    let (r, k, kp) = (params.r, params.k, params.k_prime);
    let b_full = params.s - 1;
    let (b_count, s_values) = if k >= b_full {
        let s_values = (0..r).map(|i| if i < kp % r { kp / r } else { kp / r - 1 }).collect();
        (b_full, s_values)
    } else {
        (k, vec![0; r])
    };
    let a_slots = s_values
        .iter()
        .enumerate()
        .flat_map(|(i, &si)| (1..=si).map(move |j| (i, j)))
        .collect();
    let layout = MessageLayout {
        a_slots,
        b_count,
        s_values,
    };
    debug_assert_eq!(layout.len(), k);
    layout
}

/// A fully built code instance.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    params: CodeParams,
    subgroup: SubgroupSpec,
    partition: PartitionSpec,
    good: GoodPolynomial,
    h_b: Polynomial,
    eval_points: Vec<FieldElement>,
    layout: MessageLayout,
    generator: Matrix,
    g_powers: Vec<Polynomial>,
    /// Coordinate (0-based) of each parent point, `None` for removed points.
    parent_coordinate: Vec<Option<usize>>,
}

pub fn build_code(params: &CodeParams) -> Result<CodeSpec> {
    let field = params.field;
    let subgroup = find_subgroup(&field, params.r + 1)?;
    let blocks = coset_partition(&field, &subgroup, params.m)?;
    let partition = PartitionSpec::new(blocks, params.t)?;
    let good = normalize_gamma(&field, &good_polynomial(&field, &subgroup), &partition)?;
    let h_b = Polynomial::from_roots(&field, &partition.removed);
    let eval_points = partition.evaluation_set();

    let mut spec = CodeSpec::assemble(params.clone(), subgroup, partition, good, h_b, eval_points)?;
    let generator: Matrix = (0..params.k)
        .map(|row| {
            let mut unit = vec![FieldElement::ZERO; params.k];
            unit[row] = FieldElement::ONE;
            spec.encode(&unit)
        })
        .collect::<Result<_>>()?;
    let rank = linalg::rank(&field, &generator);
    if rank != params.k {
        return Err(Error::InternalInconsistency(format!(
            "generator matrix has rank {rank}, expected {}",
            params.k
        )));
    }
    spec.generator = generator;
    Ok(spec)
}

impl CodeSpec {
    fn assemble(
        params: CodeParams,
        subgroup: SubgroupSpec,
        partition: PartitionSpec,
        good: GoodPolynomial,
        h_b: Polynomial,
        eval_points: Vec<FieldElement>,
    ) -> Result<CodeSpec> {
        let layout = message_layout(&params);
        let max_j = layout.s_values.iter().copied().max().unwrap_or(0);
        let field = params.field;
        let mut g_powers = vec![Polynomial::one()];
        for j in 1..=max_j {
            let next = g_powers[j - 1].mul(&good.g_tilde, &field);
            g_powers.push(next);
        }
        let parent_coordinate = partition
            .blocks
            .iter()
            .flatten()
            .map(|x| eval_points.binary_search(x).ok())
            .collect();
        Ok(CodeSpec {
            params,
            subgroup,
            partition,
            good,
            h_b,
            eval_points,
            layout,
            generator: Vec::new(),
            g_powers,
            parent_coordinate,
        })
    }

    /// Rebuilds a spec from stored components, checking every structural
    /// invariant. The generator matrix is only checked for shape and
    /// element range; its rank is left to verification.
    pub fn from_components(
        params: CodeParams,
        subgroup: SubgroupSpec,
        partition: PartitionSpec,
        good: GoodPolynomial,
        h_b: Polynomial,
        eval_points: Vec<FieldElement>,
        generator: Matrix,
    ) -> Result<CodeSpec> {
        let field = params.field;
        let invalid = |msg: String| Err(Error::InvalidSpec(msg));

        subgroup.validate(&field)?;
        if subgroup.size() != params.r + 1 {
            return invalid(format!(
                "subgroup has size {}, expected r+1 = {}",
                subgroup.size(),
                params.r + 1
            ));
        }
        partition.validate()?;
        if partition.blocks.len() != params.m || partition.block_size() != params.r + 1 {
            return invalid("partition shape does not match parameters".into());
        }
        for (i, block) in partition.blocks.iter().enumerate() {
            if block.iter().any(|x| x.value() as usize >= params.q) {
                return invalid(format!("block {i} contains an element outside GF({})", params.q));
            }
            if subgroup.coset_of(&field, block[0]) != *block {
                return invalid(format!("block {i} is not a coset of the subgroup"));
            }
        }
        if partition.removed.len() != params.t {
            return invalid(format!(
                "B has {} points, expected t = {}",
                partition.removed.len(),
                params.t
            ));
        }
        if good.g_raw != good_polynomial(&field, &subgroup) {
            return invalid("g_tilde + gamma is not the good polynomial of the subgroup".into());
        }
        let renormalized = normalize_gamma(&field, &good.g_raw, &partition)?;
        if renormalized != good {
            return invalid("good polynomial is not normalized to vanish on the last block".into());
        }
        if h_b != Polynomial::from_roots(&field, &partition.removed) {
            return invalid("h_B is not the annihilator of B".into());
        }
        if eval_points != partition.evaluation_set() {
            return invalid("evaluation points do not match the partition".into());
        }
        if generator.len() != params.k || generator.iter().any(|row| row.len() != params.n) {
            return invalid(format!("generator matrix must be {} x {}", params.k, params.n));
        }
        if generator.iter().flatten().any(|x| x.value() as usize >= params.q) {
            return invalid("generator matrix contains an element outside the field".into());
        }
        let mut spec = Self::assemble(params, subgroup, partition, good, h_b, eval_points)?;
        spec.generator = generator;
        Ok(spec)
    }

    pub fn field(&self) -> &Field {
        &self.params.field
    }

    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn subgroup(&self) -> &SubgroupSpec {
        &self.subgroup
    }

    pub fn partition(&self) -> &PartitionSpec {
        &self.partition
    }

    pub fn good(&self) -> &GoodPolynomial {
        &self.good
    }

    pub fn h_b(&self) -> &Polynomial {
        &self.h_b
    }

    /// `alpha_1 .. alpha_n`, sorted ascending.
    pub fn eval_points(&self) -> &[FieldElement] {
        &self.eval_points
    }

    pub fn layout(&self) -> &MessageLayout {
        &self.layout
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    /// Parent points `A_1 .. A_m` concatenated in block order.
    pub fn parent_points(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.partition.blocks.iter().flatten().copied()
    }

    /// 0-based coordinate of an evaluation point.
    pub fn coordinate_of(&self, point: FieldElement) -> Option<usize> {
        self.eval_points.binary_search(&point).ok()
    }

    fn check_len(&self, msg: &[FieldElement]) -> Result<()> {
        if msg.len() != self.params.k {
            return Err(Error::LengthMismatch {
                expected: self.params.k,
                got: msg.len(),
            });
        }
        Ok(())
    }

    /// `f_a(x) = sum_i (sum_j a_ij g(x)^j) x^i + h_B(x) sum_m b_m x^m`.
    pub fn assemble_polynomial(&self, msg: &[FieldElement]) -> Result<Polynomial> {
        self.check_len(msg)?;
        let field = self.field();
        let (a_part, b_part) = msg.split_at(self.layout.a_slots.len());

        let mut f = Polynomial::zero();
        let mut slots = self.layout.a_slots.iter().zip(a_part).peekable();
        for i in 0..self.params.r {
            let mut f_i = Polynomial::zero();
            while let Some(((_, j), &a)) = slots.next_if(|((si, _), _)| *si == i) {
                if !a.is_zero() {
                    f_i = f_i.add(&self.g_powers[*j].scale(a, field), field);
                }
            }
            f = f.add(&f_i.shift(i), field);
        }
        let b_poly = Polynomial::from_coeffs(b_part.to_vec());
        Ok(f.add(&self.h_b.mul(&b_poly, field), field))
    }

    pub fn encode(&self, msg: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let f = self.assemble_polynomial(msg)?;
        let field = self.field();
        Ok(self.eval_points.iter().map(|&x| f.eval(field, x)).collect())
    }

    /// `msg * G`.
    pub fn encode_with_generator(&self, msg: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(msg)?;
        let field = self.field();
        let mut out = vec![FieldElement::ZERO; self.params.n];
        for (&a, row) in msg.iter().zip(&self.generator) {
            if a.is_zero() {
                continue;
            }
            for (c, &g) in out.iter_mut().zip(row) {
                *c = field.add(*c, field.mul(a, g));
            }
        }
        Ok(out)
    }

    /// Evaluations of `f_a` on every parent point, in block order.
    pub fn extend_to_parent(&self, msg: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let f = self.assemble_polynomial(msg)?;
        let field = self.field();
        Ok(self.parent_points().map(|x| f.eval(field, x)).collect())
    }

    /// Restriction of a parent word (block order) to the code coordinates.
    pub fn restrict_parent(&self, parent: &[FieldElement]) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::ZERO; self.params.n];
        for (&coord, &v) in self.parent_coordinate.iter().zip(parent) {
            if let Some(c) = coord {
                out[c] = v;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Degree;
    use rand::{Rng, SeedableRng};

    fn els(f: &Field, vs: &[u64]) -> Vec<FieldElement> {
        vs.iter().map(|&v| f.element(v).unwrap()).collect()
    }

    fn unit(k: usize, i: usize) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::ZERO; k];
        v[i] = FieldElement::ONE;
        v
    }

    #[test]
    fn validate_examples() {
        let p = validate_params(13, 10, 5, 3).unwrap();
        assert_eq!((p.s, p.t, p.m, p.n_bar, p.k_prime), (2, 2, 3, 12, 7));
        let p = validate_params(13, 12, 6, 3).unwrap();
        assert_eq!((p.s, p.t, p.m, p.n_bar, p.k_prime), (4, 0, 3, 12, 6));
        assert!(matches!(validate_params(13, 9, 5, 3), Err(Error::SEqualsOne)));
        assert!(matches!(
            validate_params(13, 10, 8, 3),
            Err(Error::RateBoundViolated { k: 8, max: 7 })
        ));
    }

    #[test]
    fn validate_errors() {
        assert!(matches!(validate_params(12, 10, 5, 3), Err(Error::NotAPrimePower(12))));
        assert!(matches!(validate_params(13, 10, 5, 4), Err(Error::NoSubgroup { .. })));
        // 16 points needed, multiplicative cosets of size 4 in GF(13) give 12.
        assert!(matches!(
            validate_params(13, 14, 5, 3),
            Err(Error::FieldTooSmall {
                needed: 16,
                available: 12,
                ..
            })
        ));
        assert!(matches!(validate_params(13, 3, 1, 3), Err(Error::InvalidParams(_))));
        assert!(matches!(validate_params(13, 10, 0, 3), Err(Error::InvalidParams(_))));
        // additive path reaches all 16 points
        assert_eq!(validate_params(16, 16, 5, 3).unwrap().n_bar, 16);
    }

    #[test]
    fn layout_examples() {
        let l = message_layout(&validate_params(13, 10, 5, 3).unwrap());
        assert_eq!(l.s_values, vec![2, 1, 1]);
        assert_eq!(l.a_slots, vec![(0, 1), (0, 2), (1, 1), (2, 1)]);
        assert_eq!(l.b_count, 1);

        let l = message_layout(&validate_params(13, 12, 6, 3).unwrap());
        assert_eq!(l.s_values, vec![1, 1, 1]);
        assert_eq!(l.a_slots.len(), 3);
        assert_eq!(l.b_count, 3);
    }

    #[test]
    fn layout_small_k_uses_only_b_slots() {
        // s = 4, t = 1, r = 4: k = 1 and k = 2 are below s - 1 = 3.
        for k in 1..=2 {
            let l = message_layout(&validate_params(16, 9, k, 4).unwrap());
            assert!(l.a_slots.is_empty());
            assert_eq!(l.b_count, k);
        }
        let l = message_layout(&validate_params(13, 12, 2, 3).unwrap());
        assert_eq!((l.a_slots.len(), l.b_count), (0, 2));
    }

    #[test]
    fn layout_count_matches_k_everywhere() {
        for (q, r) in [(13u64, 2usize), (13, 3), (16, 2), (16, 3), (16, 4), (17, 3)] {
            for n in (r + 1)..=16 {
                for k in 1..=n {
                    if let Ok(p) = validate_params(q, n, k, r) {
                        assert_eq!(message_layout(&p).len(), k, "{q} {n} {k} {r}");
                    }
                }
            }
        }
    }

    #[test]
    fn build_example() {
        let spec = build_code(&validate_params(13, 10, 5, 3).unwrap()).unwrap();
        let f = spec.field();
        assert_eq!(
            spec.eval_points(),
            els(f, &[1, 2, 3, 4, 5, 6, 8, 10, 11, 12]).as_slice()
        );
        assert_eq!(spec.partition().removed, els(f, &[7, 9]));
        assert_eq!(spec.h_b().coeffs(), els(f, &[11, 10, 1]).as_slice());
        assert_eq!(spec.good().g_tilde.coeffs(), els(f, &[4, 0, 0, 0, 1]).as_slice());
        assert_eq!(linalg::rank(f, spec.generator()), 5);
    }

    #[test]
    fn build_divisible() {
        let spec = build_code(&validate_params(13, 12, 6, 3).unwrap()).unwrap();
        assert!(spec.partition().removed.is_empty());
        assert_eq!(*spec.h_b(), Polynomial::one());
        assert_eq!(spec.eval_points().len(), 12);
        assert_eq!(
            spec.eval_points(),
            els(spec.field(), &(1..=12).collect::<Vec<_>>()).as_slice()
        );
    }

    #[test]
    fn assemble_examples() {
        let spec = build_code(&validate_params(13, 10, 5, 3).unwrap()).unwrap();
        let f = *spec.field();
        assert!(spec.assemble_polynomial(&[FieldElement::ZERO; 5]).unwrap().is_zero());
        assert_eq!(spec.assemble_polynomial(&unit(5, 4)).unwrap(), *spec.h_b());

        let fa = spec.assemble_polynomial(&unit(5, 1)).unwrap();
        let g = &spec.good().g_tilde;
        assert_eq!(fa, g.mul(g, &f));
        assert_eq!(fa.degree(), Degree::Finite(8));
        assert_eq!(spec.params().degree_cap(), 8);

        assert!(matches!(
            spec.assemble_polynomial(&[FieldElement::ZERO; 4]),
            Err(Error::LengthMismatch { expected: 5, got: 4 })
        ));
    }

    #[test]
    fn encode_examples() {
        let spec = build_code(&validate_params(13, 10, 5, 3).unwrap()).unwrap();
        let f = *spec.field();
        assert!(spec
            .encode(&[FieldElement::ZERO; 5])
            .unwrap()
            .iter()
            .all(|c| c.is_zero()));
        let cw = spec.encode(&unit(5, 4)).unwrap();
        let at = |x: u64| cw[spec.coordinate_of(f.element(x).unwrap()).unwrap()];
        // (x-7)(x-9) at 4, 6, 1
        assert_eq!(at(4), f.element(2).unwrap());
        assert_eq!(at(6), f.element(3).unwrap());
        assert_eq!(at(1), f.element(9).unwrap());
        assert!(matches!(spec.encode(&[]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn extend_to_parent_examples() {
        let spec = build_code(&validate_params(13, 10, 5, 3).unwrap()).unwrap();
        let f = *spec.field();
        let zero = spec.extend_to_parent(&[FieldElement::ZERO; 5]).unwrap();
        assert_eq!(zero.len(), 12);
        assert!(zero.iter().all(|c| c.is_zero()));

        let msg = unit(5, 4);
        let parent = spec.extend_to_parent(&msg).unwrap();
        let points: Vec<_> = spec.parent_points().collect();
        for b in [7, 9] {
            let pos = points.iter().position(|&x| x == f.element(b).unwrap()).unwrap();
            assert!(parent[pos].is_zero());
        }
        assert_eq!(spec.restrict_parent(&parent), spec.encode(&msg).unwrap());
    }

    #[test]
    fn degree_cap_and_linearity_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (q, n, k, r) in [
            (13u64, 10, 5, 3),
            (13, 12, 6, 3),
            (16, 14, 7, 3),
            (17, 15, 9, 3),
            (16, 13, 8, 4),
        ] {
            let spec = build_code(&validate_params(q, n, k, r).unwrap()).unwrap();
            let f = *spec.field();
            let rand_msg = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<FieldElement> {
                (0..k).map(|_| f.element(rng.gen_range(0..q)).unwrap()).collect()
            };
            for _ in 0..2000 {
                let msg = rand_msg(&mut rng);
                let fa = spec.assemble_polynomial(&msg).unwrap();
                assert!(fa.degree() <= Degree::Finite(spec.params().degree_cap()));
            }
            for _ in 0..200 {
                let (u, v) = (rand_msg(&mut rng), rand_msg(&mut rng));
                let (a, b) = (
                    f.element(rng.gen_range(0..q)).unwrap(),
                    f.element(rng.gen_range(0..q)).unwrap(),
                );
                let combo: Vec<_> = u
                    .iter()
                    .zip(&v)
                    .map(|(&x, &y)| f.add(f.mul(a, x), f.mul(b, y)))
                    .collect();
                let cu = spec.encode(&u).unwrap();
                let cv = spec.encode(&v).unwrap();
                let expected: Vec<_> = cu
                    .iter()
                    .zip(&cv)
                    .map(|(&x, &y)| f.add(f.mul(a, x), f.mul(b, y)))
                    .collect();
                assert_eq!(spec.encode(&combo).unwrap(), expected);
                assert_eq!(spec.encode_with_generator(&combo).unwrap(), expected);
            }
        }
    }

    #[test]
    fn block_restrictions_have_low_degree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for (q, n, k, r) in [(13u64, 10, 5, 3), (16, 14, 7, 3), (16, 13, 6, 4)] {
            let spec = build_code(&validate_params(q, n, k, r).unwrap()).unwrap();
            let f = *spec.field();
            for _ in 0..200 {
                let msg: Vec<_> = (0..k).map(|_| f.element(rng.gen_range(0..q)).unwrap()).collect();
                let parent = spec.extend_to_parent(&msg).unwrap();
                let pts: Vec<_> = spec.parent_points().zip(parent).collect();
                for block in pts.chunks(r + 1) {
                    let poly = crate::field::lagrange_interpolate(&f, block).unwrap();
                    assert!(poly.degree() <= Degree::Finite(r - 1));
                }
            }
        }
    }
}
