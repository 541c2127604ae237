use serde::{Deserialize, Serialize};

use crate::data::{DataSource, KB_FILE};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GolayRule {
    pub bases: Vec<u64>,
    pub prov: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HFact {
    pub h: u64,
    pub prov: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthFact {
    pub l: u64,
    pub prov: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WtFact {
    pub w: u64,
    pub prov: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialFact {
    pub n: u64,
    pub prov: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsRules {
    /// BS(l+1,l) for `l <= consecutive_max`.
    pub consecutive_max: u64,
    pub consecutive_prov: String,
    /// BS(2l-1,l) for even `l <= double_max`.
    pub double_max: u64,
    pub double_prov: String,
    pub golay_prov: String,
    pub seed_prov: String,
}

/// Closed-form families of Williamson-type orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum WtRule {
    AllOddUpTo {
        max: u64,
        prov: String,
    },
    /// `(q+1)/2` for prime powers `q ≡ 1 (mod 4)`.
    HalfPrimePowerPlusOne {
        below: u64,
        prov: String,
    },
    /// `q` for prime powers `q ≡ 1 (mod 4)`.
    PrimePowerOneModFour {
        below: u64,
        prov: String,
    },
}

impl WtRule {
    fn reason(&self, w: u64) -> Option<&str> {
        match self {
            WtRule::AllOddUpTo { max, prov } => (w % 2 == 1 && w <= *max).then_some(prov.as_str()),
            WtRule::HalfPrimePowerPlusOne { below, prov } => {
                let q = (2 * w).checked_sub(1)?;
                (w < *below && q % 4 == 1 && is_prime_power(q)).then_some(prov.as_str())
            }
            WtRule::PrimePowerOneModFour { below, prov } => {
                (w < *below && w % 4 == 1 && is_prime_power(w)).then_some(prov.as_str())
            }
        }
    }
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut m = q;
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

/// Existence facts with provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnowledgeBase {
    pub golay: GolayRule,
    pub bhw: Vec<HFact>,
    pub ns_lengths: Vec<LengthFact>,
    pub nn_lengths: Vec<LengthFact>,
    pub bs_rules: BsRules,
    pub wt: Vec<WtFact>,
    #[serde(default)]
    pub wt_rules: Vec<WtRule>,
    pub special_facts: Vec<SpecialFact>,
}

impl KnowledgeBase {
    pub fn load(src: &DataSource) -> Result<Self> {
        Ok(serde_json::from_str(&src.shipped(KB_FILE)?)?)
    }

    /// The shipped knowledge base.
    pub fn shipped() -> Self {
        Self::load(&DataSource::embedded()).expect("embedded knowledge base parses")
    }

    /// The same facts without the closed-form Williamson families.
    pub fn without_wt_rules(&self) -> Self {
        KnowledgeBase { wt_rules: Vec::new(), ..self.clone() }
    }

    pub fn is_golay_number(&self, g: u64) -> bool {
        if g == 0 {
            return false;
        }
        let mut g = g;
        for &b in self.golay.bases.iter().rev() {
            while b > 1 && g.is_multiple_of(b) {
                g /= b;
            }
        }
        g == 1
    }

    fn ns(&self, l: u64) -> Option<&str> {
        self.ns_lengths.iter().find(|f| f.l == l).map(|f| f.prov.as_str())
    }

    fn nn(&self, l: u64) -> Option<&str> {
        self.nn_lengths.iter().find(|f| f.l == l && l.is_multiple_of(2)).map(|f| f.prov.as_str())
    }

    /// Why NS(l) or NN(l) exists.
    pub fn seed_reason(&self, l: u64) -> Option<String> {
        if l == 0 {
            return Some("trivial seed of lengths (1,0)".into());
        }
        if let Some(p) = self.ns(l).or_else(|| self.nn(l)) {
            return Some(p.to_string());
        }
        self.is_golay_number(l).then(|| format!("NS({l}) from a Golay pair; {}", self.golay.prov))
    }

    pub fn yang_reason(&self, y: u64) -> Option<String> {
        if y.is_multiple_of(2) {
            return None;
        }
        self.seed_reason((y - 1) / 2)
    }

    pub fn is_yang_number(&self, y: u64) -> bool {
        self.yang_reason(y).is_some()
    }

    pub fn bs_reason(&self, r: u64, s: u64) -> Option<String> {
        if r == 0 || r < s {
            return None;
        }
        let rules = &self.bs_rules;
        if r == s + 1 {
            if s <= rules.consecutive_max {
                return Some(rules.consecutive_prov.clone());
            }
            if let Some(p) = self.seed_reason(s) {
                return Some(format!("{}; {p}", rules.seed_prov));
            }
        }
        if s >= 2 && s.is_multiple_of(2) && s <= rules.double_max && r == 2 * s - 1 {
            return Some(rules.double_prov.clone());
        }
        if s >= 1 && self.is_golay_number(r) && self.is_golay_number(s) {
            return Some(rules.golay_prov.clone());
        }
        None
    }

    pub fn bs_exists(&self, r: u64, s: u64) -> bool {
        self.bs_reason(r, s).is_some()
    }

    pub fn wt_reason(&self, w: u64) -> Option<String> {
        if let Some(f) = self.wt.iter().find(|f| f.w == w) {
            return Some(f.prov.clone());
        }
        self.wt_rules.iter().find_map(|r| r.reason(w)).map(str::to_string)
    }

    pub fn wt_exists(&self, w: u64) -> bool {
        self.wt_reason(w).is_some()
    }

    pub fn bhw_reason(&self, h: u64) -> Option<String> {
        self.bhw.iter().find(|f| f.h == h).map(|f| f.prov.clone())
    }

    pub fn special(&self, n: u64) -> Option<&SpecialFact> {
        self.special_facts.iter().find(|f| f.n == n)
    }
}
