//! Constructive ingredients for the pipeline: Golay pairs, base sequences,
//! seeds for multiplication, arrays and Williamson-type matrices.
//!
//! Everything comes from a construction, a search, or a data file, and is
//! checked before use.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::constructions::{golay_double, golay_to_normal, two_golay_to_base};
use crate::data::DataSource;
use crate::error::{Error, Result};
use crate::objects::{
    verify_base, verify_bhw, verify_golay, verify_wt, BaseQuad, FormalArray, GolayPair, MatrixQuad, Object, QuadKind,
    WtFile,
};
use crate::plugin::gs_template;
use crate::search::engine::{run, Layout, Mode, Plan, RunSpec};
use crate::search::{find_golay, search_williamson, SearchConfig, WILLIAMSON_BOUND};
use crate::seqcore::BinarySeq;
use crate::yang::trivial_seed;

/// Node cap for the find-first searches used to supply base sequences.
pub const FIND_BUDGET: u64 = 200_000_000;
/// Largest `2r + 2s` for which base sequences are searched for.
pub const FIND_MAX_BITS: usize = 60;

#[derive(Clone, Debug, Default)]
pub struct Witnesses {
    data: DataSource,
    bhw: BTreeMap<usize, FormalArray>,
    wt: BTreeMap<usize, MatrixQuad>,
    seeds: OnceLock<[GolayPair; 2]>,
}

fn missing(what: impl Into<String>) -> Error {
    Error::NoConstructiveWitness(what.into())
}

impl Witnesses {
    pub fn new(data: DataSource) -> Self {
        Witnesses { data, ..Default::default() }
    }

    /// Registers an array of order `4h`; it is checked now.
    pub fn with_bhw(mut self, h: usize, array: FormalArray) -> Result<Self> {
        if !verify_bhw(&array, h)? {
            return Err(Error::InvalidInput(format!("array of order {} fails the h = {h} check", array.order())));
        }
        self.bhw.insert(h, array);
        Ok(self)
    }

    /// Registers Williamson-type matrices; they are checked now.
    pub fn with_wt(mut self, q: MatrixQuad) -> Result<Self> {
        if !verify_wt(&q) {
            return Err(Error::InvalidInput(format!("WT({}) fails the check", q.order())));
        }
        self.wt.insert(q.order(), q);
        Ok(self)
    }

    fn golay_seeds(&self) -> &[GolayPair; 2] {
        self.seeds.get_or_init(|| {
            let cfg = SearchConfig::default();
            let find = |g| find_golay(g, &cfg).ok().flatten().expect("Golay pairs of length 10 and 26 exist");
            [find(10), find(26)]
        })
    }

    /// Golay pair of length `2^a`, `10 * 2^a` or `26 * 2^a`, or from `gs-{g}.json`.
    pub fn golay(&self, g: usize) -> Result<GolayPair> {
        if let Some(p) = self.data.optional(&format!("gs-{g}.json")) {
            if let Object::Golay(gp) = Object::load(&p)? {
                if gp.len() == g && verify_golay(&gp) {
                    return Ok(gp);
                }
            }
            return Err(Error::DataMismatch(format!("{} is not a Golay pair of length {g}", p.display())));
        }
        if g == 0 {
            return Err(missing("GS(0)"));
        }
        let twos = g.trailing_zeros();
        let odd_part = g >> twos;
        let mut gp = match odd_part {
            1 => GolayPair::unit(),
            5 if twos >= 1 => self.golay_seeds()[0].clone(),
            13 if twos >= 1 => self.golay_seeds()[1].clone(),
            _ => return Err(missing(format!("GS({g})"))),
        };
        while gp.len() < g {
            gp = golay_double(&gp)?;
        }
        Ok(gp)
    }

    fn base_file(&self, r: usize, s: usize) -> Result<Option<BaseQuad>> {
        let Some(p) = self.data.optional(&format!("bs-{r}-{s}.json")) else {
            return Ok(None);
        };
        match Object::load(&p)? {
            Object::Quad(q) if q.r() == r && q.s() == s && verify_base(&q) => Ok(Some(q.with_kind(QuadKind::Plain))),
            _ => Err(Error::DataMismatch(format!("{} is not BS({r},{s})", p.display()))),
        }
    }

    /// Base sequences BS(r,s).
    pub fn base(&self, r: usize, s: usize) -> Result<BaseQuad> {
        if let Some(q) = self.base_file(r, s)? {
            return Ok(q);
        }
        if s == 0 {
            let gp = self.golay(r)?;
            return BaseQuad::new(gp.a, gp.b, BinarySeq::default(), BinarySeq::default());
        }
        if r == s + 1 {
            if let Ok(gp) = self.golay(s) {
                return Ok(golay_to_normal(&gp)?.with_kind(QuadKind::Plain));
            }
        }
        if let (Ok(g1), Ok(g2)) = (self.golay(r), self.golay(s)) {
            return two_golay_to_base(&g1, &g2);
        }
        if 2 * (r + s) <= FIND_MAX_BITS {
            let plan = Plan::new(Layout::base(r, s));
            let spec = RunSpec { budget: Some(FIND_BUDGET), ..RunSpec::default() };
            if let Ok(out) = run(&plan, Mode::First, &spec) {
                if let Some(flat) = out.solutions.first() {
                    return Ok(BaseQuad::from_flat(flat, r, s, QuadKind::Plain));
                }
            }
        }
        Err(missing(format!("BS({r},{s})")))
    }

    /// A normal or near-normal seed with parameter `l`.
    pub fn yang_seed(&self, l: usize) -> Result<BaseQuad> {
        if l == 0 {
            return Ok(trivial_seed(QuadKind::Normal));
        }
        if let Ok(gp) = self.golay(l) {
            return golay_to_normal(&gp);
        }
        if l.is_multiple_of(2) && 3 * l + 2 <= 32 {
            let plan = Plan::new(Layout::near_normal(l));
            let spec = RunSpec { budget: Some(FIND_BUDGET), ..RunSpec::default() };
            if let Ok(out) = run(&plan, Mode::First, &spec) {
                if let Some(flat) = out.solutions.first() {
                    return Ok(BaseQuad::from_flat(flat, l + 1, l, QuadKind::NearNormal));
                }
            }
        }
        Err(missing(format!("NS({l}) or NN({l})")))
    }

    /// Array of order `4h`: built in for `h = 1`, otherwise registered or `bhw-{h}.json`.
    pub fn bhw(&self, h: usize) -> Result<FormalArray> {
        if h == 1 {
            return Ok(gs_template());
        }
        if let Some(a) = self.bhw.get(&h) {
            return Ok(a.clone());
        }
        let Some(p) = self.data.optional(&format!("bhw-{}.json", 4 * h)) else {
            return Err(Error::MissingBhwData(h));
        };
        match Object::load(&p)? {
            Object::Bhw { array, h: hh } if hh == h && verify_bhw(&array, h)? => Ok(array),
            _ => Err(Error::DataMismatch(format!("{} is not a valid array for h = {h}", p.display()))),
        }
    }

    /// Williamson-type matrices of order `w`.
    pub fn wt(&self, w: usize) -> Result<MatrixQuad> {
        if w == 1 {
            return Ok(MatrixQuad::unit());
        }
        if let Some(q) = self.wt.get(&w) {
            return Ok(q.clone());
        }
        if let Some(p) = self.data.optional(&format!("wt-{w}.json")) {
            let q = WtFile::load(&p)?;
            if q.order() != w || !verify_wt(&q) {
                return Err(Error::DataMismatch(format!("{} is not WT({w})", p.display())));
            }
            return Ok(q);
        }
        if w % 2 == 1 && w <= WILLIAMSON_BOUND {
            if let Some(q) = search_williamson(w)?.into_iter().next() {
                return Ok(q);
            }
        }
        Err(missing(format!("WT({w})")))
    }
}
