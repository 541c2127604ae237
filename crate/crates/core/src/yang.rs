//! Multiplication of base sequences by normal or near-normal sequences.
//!
//! A normal or near-normal quadruple with parameter `l` and base sequences
//! BS(r,s) give T-sequences of length `(2l+1)(r+s)`. Only the degenerate
//! case `l = 0` is composed here: the seed then has lengths (1,0) and the
//! result is the T-sequence image of the base sequences. For `l >= 1` the
//! interleaving scheme is not built in and [`yang_multiply`] returns
//! [`Error::NotImplementedForKind`]; a scheme can be supplied through
//! [`YangScheme`] and is held to the same length and verification gate.

use crate::constructions::base_to_t;
use crate::error::{Error, Result};
use crate::objects::{verify_base, verify_quad, verify_t, BaseQuad, QuadKind, TQuad};

/// A normal or near-normal seed together with plain base sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YangInput {
    pub seq: BaseQuad,
    pub bs: BaseQuad,
}

impl YangInput {
    /// The parameter `l` of the seed.
    pub fn l(&self) -> usize {
        self.seq.s()
    }

    /// `(2l+1)(r+s)`.
    pub fn output_len(&self) -> usize {
        (2 * self.l() + 1) * (self.bs.r() + self.bs.s())
    }
}

/// An interleaving scheme for one seed kind.
pub trait YangScheme {
    fn compose(&self, seq: &BaseQuad, bs: &BaseQuad) -> Result<TQuad>;
}

fn check_input(input: &YangInput) -> Result<()> {
    if !matches!(input.seq.kind, QuadKind::Normal | QuadKind::NearNormal) {
        return Err(Error::InvalidInput("seed must be normal or near-normal".into()));
    }
    if input.seq.r() != input.seq.s() + 1 || !verify_quad(&input.seq) {
        return Err(Error::InvalidInput(format!("seed fails the {} check: {}", input.seq.kind, input.seq)));
    }
    if !verify_base(&input.bs) {
        return Err(Error::InvalidInput(format!("not base sequences: {}", input.bs)));
    }
    Ok(())
}

fn gate(input: &YangInput, out: TQuad) -> Result<TQuad> {
    if out.len() != input.output_len() || !verify_t(&out) {
        return Err(Error::VerificationFailed(format!(
            "composition of length {} (expected {})",
            out.len(),
            input.output_len()
        )));
    }
    Ok(out)
}

/// Composes with a caller-supplied scheme, keeping the length and
/// verification contract.
pub fn yang_multiply_with(scheme: &dyn YangScheme, input: &YangInput) -> Result<TQuad> {
    check_input(input)?;
    let out = scheme.compose(&input.seq, &input.bs)?;
    gate(input, out)
}

fn multiply_normal(seq: &BaseQuad, bs: &BaseQuad) -> Result<TQuad> {
    match seq.s() {
        0 => base_to_t(bs),
        _ => Err(Error::NotImplementedForKind(QuadKind::Normal)),
    }
}

fn multiply_near_normal(seq: &BaseQuad, bs: &BaseQuad) -> Result<TQuad> {
    match seq.s() {
        0 => base_to_t(bs),
        _ => Err(Error::NotImplementedForKind(QuadKind::NearNormal)),
    }
}

/// T-sequences of length `(2l+1)(r+s)`, checked before they are returned.
pub fn yang_multiply(input: &YangInput) -> Result<TQuad> {
    check_input(input)?;
    let out = match input.seq.kind {
        QuadKind::Normal => multiply_normal(&input.seq, &input.bs)?,
        _ => multiply_near_normal(&input.seq, &input.bs)?,
    };
    gate(input, out)
}

/// The length-(1,0) seed `((+);(+);();())` of the given kind.
pub fn trivial_seed(kind: QuadKind) -> BaseQuad {
    let one = crate::seqcore::BinarySeq::ones(1);
    let empty = crate::seqcore::BinarySeq::default();
    BaseQuad { a: one.clone(), b: one, c: empty.clone(), d: empty, kind }
}
