//! Elementary maps between Golay pairs, base sequences and T-sequences.
//! Every output is re-verified before it is returned.

use crate::error::{Error, Result};
use crate::objects::{verify_base, verify_golay, verify_normal, verify_t, BaseQuad, GolayPair, QuadKind, TQuad};
use crate::seqcore::{half_diff, half_sum, zeros, BinarySeq};

fn require_golay(gp: &GolayPair) -> Result<()> {
    if verify_golay(gp) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("not a Golay pair: ({}, {})", gp.a, gp.b)))
    }
}

fn require_base(q: &BaseQuad) -> Result<()> {
    if verify_base(q) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("not base sequences: {q}")))
    }
}

fn gate(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ConstructionFailedVerification(what.to_string()))
    }
}

/// `(A,+ ; A,- ; B ; B)`, normal sequences NS(g).
pub fn golay_to_normal(gp: &GolayPair) -> Result<BaseQuad> {
    require_golay(gp)?;
    let plus = BinarySeq::ones(1);
    let q = BaseQuad {
        a: gp.a.concat(&plus),
        b: gp.a.concat(&plus.negate()),
        c: gp.b.clone(),
        d: gp.b.clone(),
        kind: QuadKind::Normal,
    };
    gate(verify_normal(&q).is_ok(), "golay_to_normal")?;
    Ok(q)
}

/// `(A ; B ; + ; +)`, base sequences BS(g,1).
pub fn golay_to_base_g1(gp: &GolayPair) -> Result<BaseQuad> {
    require_golay(gp)?;
    let q = BaseQuad::new(gp.a.clone(), gp.b.clone(), BinarySeq::ones(1), BinarySeq::ones(1))?;
    gate(verify_base(&q), "golay_to_base_g1")?;
    Ok(q)
}

/// `(A1 ; B1 ; A2 ; B2)`, base sequences BS(g1,g2).
pub fn two_golay_to_base(gp1: &GolayPair, gp2: &GolayPair) -> Result<BaseQuad> {
    require_golay(gp1)?;
    require_golay(gp2)?;
    let q = BaseQuad::new(gp1.a.clone(), gp1.b.clone(), gp2.a.clone(), gp2.b.clone())?;
    gate(verify_base(&q), "two_golay_to_base")?;
    Ok(q)
}

/// `((A+B)/2, 0_s ; (A-B)/2, 0_s ; 0_r, (C+D)/2 ; 0_r, (C-D)/2)`, T-sequences of length r+s.
pub fn base_to_t(q: &BaseQuad) -> Result<TQuad> {
    require_base(q)?;
    let (r, s) = (q.r(), q.s());
    let t = TQuad::new([
        half_sum(&q.a, &q.b)?.concat(&zeros(s)),
        half_diff(&q.a, &q.b)?.concat(&zeros(s)),
        zeros(r).concat(&half_sum(&q.c, &q.d)?),
        zeros(r).concat(&half_diff(&q.c, &q.d)?),
    ])?;
    gate(verify_t(&t), "base_to_t")?;
    Ok(t)
}

/// `(A,B) -> (A‖B, A‖-B)`.
pub fn golay_double(gp: &GolayPair) -> Result<GolayPair> {
    require_golay(gp)?;
    let out = GolayPair::new(gp.a.concat(&gp.b), gp.a.concat(&gp.b.negate()))?;
    gate(verify_golay(&out), "golay_double")?;
    Ok(out)
}

/// Golay pair of length `2^k`, doubling from `((+),(+))`.
pub fn golay_power_of_two(k: u32) -> Result<GolayPair> {
    let mut gp = GolayPair::unit();
    for _ in 0..k {
        gp = golay_double(&gp)?;
    }
    Ok(gp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::{verify_near_normal, Rejection};
    use crate::seqcore::TernarySeq;

    fn b(s: &str) -> BinarySeq {
        s.parse().unwrap()
    }

    fn gp(a: &str, bb: &str) -> GolayPair {
        GolayPair::new(b(a), b(bb)).unwrap()
    }

    fn parts(q: &BaseQuad) -> [String; 4] {
        q.parts().map(|p| p.to_string())
    }

    #[test]
    fn normal_from_golay() {
        assert_eq!(parts(&golay_to_normal(&gp("+", "+")).unwrap()), ["++", "+-", "+", "+"]);
        assert_eq!(parts(&golay_to_normal(&gp("++", "+-")).unwrap()), ["+++", "++-", "+-", "+-"]);
        assert_eq!(parts(&golay_to_normal(&gp("--", "+-")).unwrap()), ["--+", "---", "+-", "+-"]);
        assert_eq!(verify_near_normal(&golay_to_normal(&gp("++", "+-")).unwrap()), Err(Rejection::Link(2)));
    }

    #[test]
    fn base_with_unit_tail() {
        assert_eq!(parts(&golay_to_base_g1(&gp("++", "+-")).unwrap()), ["++", "+-", "+", "+"]);
        assert_eq!(parts(&golay_to_base_g1(&gp("+", "+")).unwrap()), ["+", "+", "+", "+"]);
        let g4 = golay_power_of_two(2).unwrap();
        assert!(verify_base(&golay_to_base_g1(&g4).unwrap()));
    }

    #[test]
    fn two_pairs() {
        let g1 = GolayPair::unit();
        let g2 = gp("++", "+-");
        assert!(verify_base(&two_golay_to_base(&g2, &g1).unwrap()));
        assert!(verify_base(&two_golay_to_base(&g2, &g2).unwrap()));
        let q = two_golay_to_base(&golay_power_of_two(3).unwrap(), &golay_power_of_two(2).unwrap()).unwrap();
        assert_eq!((q.r(), q.s()), (8, 4));
        assert!(verify_base(&q));
    }

    #[test]
    fn t_from_base() {
        let q = BaseQuad::new(b("++"), b("+-"), b("+"), b("+")).unwrap();
        let t = base_to_t(&q).unwrap();
        let want: [TernarySeq; 4] = ["+00", "0+0", "00+", "000"].map(|s| s.parse().unwrap());
        assert_eq!(t.t, want);
        let bad = BaseQuad::new(b("++"), b("++"), b("+"), b("+")).unwrap();
        assert!(matches!(base_to_t(&bad), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn doubling() {
        assert_eq!(golay_double(&GolayPair::unit()).unwrap(), gp("++", "+-"));
        assert_eq!(golay_double(&gp("++", "+-")).unwrap(), gp("+++-", "++-+"));
        assert!(golay_double(&gp("++", "++")).is_err());
        let g = golay_power_of_two(11).unwrap();
        assert_eq!(g.len(), 2048);
        assert!(verify_golay(&g));
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(golay_to_normal(&gp("++", "++")).is_err());
        assert!(golay_to_base_g1(&gp("+-", "+-")).is_err());
        assert!(two_golay_to_base(&GolayPair::unit(), &gp("++", "++")).is_err());
    }
}
