//! Canonical exact arithmetic for finite sums of words `s_mu s_nu^*`.
//!
//! An element is stored in normal form: a finite map from gauge degree
//! `d = |mu| - |nu|` to one reduced block. Normal forms are unique, so
//! equality of elements is equality of maps; this realizes equality in the
//! algebra because level raising is injective on the direct limit.

use std::collections::BTreeMap;

use crate::block::{BlockData, DegreeBlock, Mat};
use crate::error::{Error, Result};
use crate::scalar::{Backend, CRat, Entry, Scalar, C64};
use crate::word::Word;

/// An element of the dense *-subalgebra of O2 in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    backend: Backend,
    blocks: BTreeMap<i64, DegreeBlock>,
}

impl Element {
    /// The zero element (empty block map).
    pub fn zero(backend: Backend) -> Self {
        Element {
            backend,
            blocks: BTreeMap::new(),
        }
    }

    /// The unit `1`.
    pub fn one(backend: Backend) -> Self {
        Element::from_word(&Word::empty(), &Word::empty(), Scalar::one(backend))
            .expect("unit construction cannot fail")
    }

    /// Generator `u`.
    pub fn gen_u(backend: Backend) -> Self {
        Element::from_word(&Word::u(), &Word::empty(), Scalar::one(backend)).unwrap()
    }

    /// Generator `v`.
    pub fn gen_v(backend: Backend) -> Self {
        Element::from_word(&Word::v(), &Word::empty(), Scalar::one(backend)).unwrap()
    }

    /// Integer multiple of the unit.
    pub fn from_integer(n: i64, backend: Backend) -> Self {
        Element::from_word(&Word::empty(), &Word::empty(), Scalar::from_integer(n, backend))
            .unwrap()
    }

    /// `c * s_left s_right^*` in normal form.
    pub fn from_word(left: &Word, right: &Word, c: Scalar) -> Result<Self> {
        let backend = c.backend();
        if c.is_zero() {
            return Ok(Element::zero(backend));
        }
        let p = left.len() as u32;
        let q = right.len() as u32;
        let degree = p as i64 - q as i64;
        let (r, col) = (left.index(), right.index());
        let data = match c {
            Scalar::Exact(z) => {
                let mut m = Mat::<CRat>::zeros(1 << p, 1 << q);
                m.set(r, col, z);
                BlockData::Exact(m)
            }
            Scalar::F64(z) => {
                let mut m = Mat::<C64>::zeros(1 << p, 1 << q);
                m.set(r, col, z);
                BlockData::F64(m)
            }
        };
        let block = DegreeBlock::new(degree, p, data)?.reduced();
        let mut blocks = BTreeMap::new();
        blocks.insert(degree, block);
        Ok(Element { backend, blocks })
    }

    /// Normal form of a raw degree -> block map: drops zero blocks, reduces
    /// the rest, and rejects blocks with inconsistent backends.
    pub fn from_raw_blocks(
        backend: Backend,
        raw: impl IntoIterator<Item = DegreeBlock>,
    ) -> Result<Self> {
        let mut out = Element::zero(backend);
        for block in raw {
            if block.backend() != backend {
                return Err(Error::BackendMismatch);
            }
            out.merge_block(block)?;
        }
        Ok(out)
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    /// Degrees carrying a nonzero block, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.blocks.keys().copied()
    }

    pub fn block(&self, degree: i64) -> Option<&DegreeBlock> {
        self.blocks.get(&degree)
    }

    pub fn blocks(&self) -> impl Iterator<Item = &DegreeBlock> {
        self.blocks.values()
    }

    /// Maximum row/column level over all blocks (0 for the zero element).
    pub fn max_level(&self) -> u32 {
        self.blocks
            .values()
            .map(|b| b.row_level().max(b.col_level()))
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    fn merge_block(&mut self, block: DegreeBlock) -> Result<()> {
        let block = block.reduced();
        if block.is_zero() {
            return Ok(());
        }
        let degree = block.degree();
        let merged = match self.blocks.remove(&degree) {
            Some(existing) => existing.add(&block)?.reduced(),
            None => block,
        };
        if !merged.is_zero() {
            self.blocks.insert(degree, merged);
        }
        Ok(())
    }

    fn check_backend(&self, other: &Element) -> Result<()> {
        if self.backend != other.backend {
            Err(Error::BackendMismatch)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_backend(other)?;
        let mut out = self.clone();
        for block in other.blocks.values() {
            out.merge_block(block.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            backend: self.backend,
            blocks: self
                .blocks
                .iter()
                .map(|(d, b)| (*d, b.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_backend(other)?;
        let mut out = Element::zero(self.backend);
        for a in self.blocks.values() {
            for b in other.blocks.values() {
                out.merge_block(a.mul(b)?)?;
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Result<Element> {
        if c.backend() != self.backend {
            return Err(Error::BackendMismatch);
        }
        if c.is_zero() {
            return Ok(Element::zero(self.backend));
        }
        let mut out = Element::zero(self.backend);
        for block in self.blocks.values() {
            out.merge_block(block.scale(c)?)?;
        }
        Ok(out)
    }

    /// Exact rational rescaling (kept exact on both backends for dyadic
    /// rationals; rounded once per entry on the double backend otherwise).
    pub fn scale_rational(&self, r: &num::BigRational) -> Element {
        use num::Zero;
        if r.is_zero() {
            return Element::zero(self.backend);
        }
        let mut out = Element::zero(self.backend);
        for block in self.blocks.values() {
            out.merge_block(block.scale_rational(r))
                .expect("same backend");
        }
        out
    }

    pub fn adjoint(&self) -> Element {
        Element {
            backend: self.backend,
            blocks: self
                .blocks
                .values()
                .map(|b| {
                    let adj = b.adjoint();
                    (adj.degree(), adj)
                })
                .collect(),
        }
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &Element) -> Result<Element> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// True iff `self - other` normalizes to zero. Exact verdict on the exact
    /// backend; on the double backend this is exact coefficient equality.
    pub fn equals(&self, other: &Element) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// The single-degree-`d` component (zero element if absent).
    pub fn degree_component(&self, degree: i64) -> Element {
        match self.blocks.get(&degree) {
            Some(block) => Element {
                backend: self.backend,
                blocks: BTreeMap::from([(degree, block.clone())]),
            },
            None => Element::zero(self.backend),
        }
    }

    /// Copy with every block raised by `k` levels; normalization undoes this.
    /// Exposed for canonical-form tests.
    pub fn raised_copy(&self, k: u32) -> Result<Vec<DegreeBlock>> {
        self.blocks.values().map(|b| b.raised(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Element {
        Element::one(Backend::Exact)
    }
    fn u() -> Element {
        Element::gen_u(Backend::Exact)
    }
    fn v() -> Element {
        Element::gen_v(Backend::Exact)
    }
    fn us() -> Element {
        u().adjoint()
    }
    fn vs() -> Element {
        v().adjoint()
    }

    #[test]
    fn from_word_examples() {
        // u: degree +1, 2x1 block (1,0)^T
        let gu = u();
        let blk = gu.block(1).unwrap();
        assert_eq!(blk.row_level(), 1);
        assert_eq!(blk.col_level(), 0);
        match blk.data() {
            BlockData::Exact(m) => {
                assert!(!m.get(0, 0).is_zero());
                assert!(m.get(1, 0).is_zero());
            }
            _ => panic!(),
        }
        // uv*: degree 0, level-1 block, single entry at (u, v)
        let uv = Element::from_word(
            &Word::parse("u").unwrap(),
            &Word::parse("v").unwrap(),
            Scalar::one(Backend::Exact),
        )
        .unwrap();
        let blk = uv.block(0).unwrap();
        assert_eq!(blk.row_level(), 1);
        match blk.data() {
            BlockData::Exact(m) => {
                assert!(!m.get(0, 1).is_zero());
                assert_eq!(m.nnz(), 1);
            }
            _ => panic!(),
        }
        // zero coefficient -> zero element
        let z = Element::from_word(&Word::empty(), &Word::empty(), Scalar::zero(Backend::Exact))
            .unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn cuntz_relations_hold_exactly() {
        let uu = us().mul(&u()).unwrap();
        assert!(uu.equals(&one()).unwrap()); // u*u = 1
        let vv = vs().mul(&v()).unwrap();
        assert!(vv.equals(&one()).unwrap()); // v*v = 1
        assert!(us().mul(&v()).unwrap().is_zero()); // u*v = 0
        assert!(vs().mul(&u()).unwrap().is_zero()); // v*u = 0
        let range_sum = u()
            .mul(&us())
            .unwrap()
            .add(&v().mul(&vs()).unwrap())
            .unwrap();
        assert!(range_sum.equals(&one()).unwrap()); // uu* + vv* = 1
    }

    #[test]
    fn add_reduces_to_unit() {
        // uu* + vv* is the level-1 identity block and must reduce to degree-0
        // scalar 1 at level 0.
        let sum = u()
            .mul(&us())
            .unwrap()
            .add(&v().mul(&vs()).unwrap())
            .unwrap();
        let blk = sum.block(0).unwrap();
        assert_eq!(blk.row_level(), 0);
    }

    #[test]
    fn mul_word_rewriting() {
        // (uv*) v = u
        let uv = u().mul(&vs()).unwrap();
        assert!(uv.mul(&v()).unwrap().equals(&u()).unwrap());
        // u + u = 2u
        let two_u = u()
            .scalar_mul(&Scalar::from_integer(2, Backend::Exact))
            .unwrap();
        assert!(u().add(&u()).unwrap().equals(&two_u).unwrap());
        // x + 0 = x
        assert!(u()
            .add(&Element::zero(Backend::Exact))
            .unwrap()
            .equals(&u())
            .unwrap());
    }

    #[test]
    fn commutator_examples() {
        assert!(u().commutator(&u()).unwrap().is_zero()); // [u,u] = 0
        // [v, v*] = vv* - 1 = -uu*
        let lhs = v().commutator(&vs()).unwrap();
        let rhs = u().mul(&us()).unwrap().neg();
        assert!(lhs.equals(&rhs).unwrap());
        // [u, v*] = uv* (v*u = 0)
        let lhs = u().commutator(&vs()).unwrap();
        let rhs = u().mul(&vs()).unwrap();
        assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn adjoint_examples() {
        // (uv*)* = vu*
        let uv = u().mul(&vs()).unwrap();
        let vu = v().mul(&us()).unwrap();
        assert!(uv.adjoint().equals(&vu).unwrap());
        // 1* = 1
        assert!(one().adjoint().equals(&one()).unwrap());
        // (2u + 3vv*)* = 2u* + 3vv*
        let two = Scalar::from_integer(2, Backend::Exact);
        let three = Scalar::from_integer(3, Backend::Exact);
        let x = u()
            .scalar_mul(&two)
            .unwrap()
            .add(&v().mul(&vs()).unwrap().scalar_mul(&three).unwrap())
            .unwrap();
        let expect = us()
            .scalar_mul(&two)
            .unwrap()
            .add(&v().mul(&vs()).unwrap().scalar_mul(&three).unwrap())
            .unwrap();
        assert!(x.adjoint().equals(&expect).unwrap());
    }

    #[test]
    fn degree_component_partition() {
        let three = Scalar::from_integer(3, Backend::Exact);
        let x = u()
            .add(&u().mul(&us()).unwrap().scalar_mul(&three).unwrap())
            .unwrap();
        assert!(x.degree_component(1).equals(&u()).unwrap());
        let d0 = u().mul(&us()).unwrap().scalar_mul(&three).unwrap();
        assert!(x.degree_component(0).equals(&d0).unwrap());
        assert!(x.degree_component(-1).is_zero());
        // components sum back to x
        let mut acc = Element::zero(Backend::Exact);
        for d in x.degrees().collect::<Vec<_>>() {
            acc = acc.add(&x.degree_component(d)).unwrap();
        }
        assert!(acc.equals(&x).unwrap());
    }

    #[test]
    fn is_zero_after_normalization() {
        assert!(Element::zero(Backend::Exact).is_zero());
        assert!(us().mul(&v()).unwrap().is_zero()); // u*v normalizes to 0
        assert!(!one().is_zero());
    }

    #[test]
    fn normalize_is_idempotent_and_level_raise_invariant() {
        let x = u()
            .mul(&vs())
            .unwrap()
            .add(&one())
            .unwrap()
            .add(&v().scalar_mul(&Scalar::from_ratio(1, 3, Backend::Exact)).unwrap())
            .unwrap();
        // rebuilding from raised raw blocks gives the identical normal form
        let raised = x.raised_copy(2).unwrap();
        let rebuilt = Element::from_raw_blocks(Backend::Exact, raised).unwrap();
        assert_eq!(rebuilt, x);
        // rebuilding from its own blocks is the identity
        let same =
            Element::from_raw_blocks(Backend::Exact, x.blocks().cloned().collect::<Vec<_>>())
                .unwrap();
        assert_eq!(same, x);
    }

    #[test]
    fn backend_mismatch_is_rejected() {
        let a = Element::one(Backend::Exact);
        let b = Element::one(Backend::F64);
        assert!(matches!(a.add(&b), Err(Error::BackendMismatch)));
        assert!(matches!(a.mul(&b), Err(Error::BackendMismatch)));
        assert!(matches!(
            a.scalar_mul(&Scalar::one(Backend::F64)),
            Err(Error::BackendMismatch)
        ));
    }

    #[test]
    fn scalar_mul_by_inverse_delta() {
        // (1/delta) * v with delta = 1/64000
        let x = v()
            .scalar_mul(&Scalar::from_integer(64000, Backend::Exact))
            .unwrap();
        let y = v()
            .scalar_mul(&Scalar::from_ratio(1, 64000, Backend::Exact))
            .unwrap()
            .scalar_mul(&Scalar::from_integer(64000 * 64000, Backend::Exact))
            .unwrap();
        assert!(x.equals(&y).unwrap());
        assert!(v().scalar_mul(&Scalar::zero(Backend::Exact)).unwrap().is_zero());
    }
}
