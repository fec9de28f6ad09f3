//! Word synthesis: turning a data set into a certified Dehn twist word.
//!
//! The constructive methods glue the periodic maps of chain and star
//! configurations along compatible fixed points ([`plan_linear`],
//! [`plan_self_compatible`]), assemble involutions and rotations from handle
//! swaps, or fall back to the exhaustive search of [`crate::search`]. Every
//! word returned by [`synthesize`] passes the strong Lefschetz certificate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{gcd, inv_mod, rem};
use crate::search::{symplectic_method, Budget};
use crate::symplectic::{evaluate, lefschetz_certify, transvection, CertificateReport};
use crate::twistword::{lickorish_chain, named_relation_word, star_block, NamedRelation, StarForm};
use crate::{ClassKind, ConePair, CurveId, DataSet, Error, Result, TwistWord};

/// The method that produced a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum MethodTag {
    /// Genus one: a power of `T_a T_b` or `T_a^2 T_b`.
    Torus,
    Involution,
    Rotation,
    Chain,
    Star,
    #[serde(rename = "starFT")]
    StarFt,
    PermAddition,
    Root,
    /// Exhaustive symplectic search.
    #[serde(rename = "symplecticSearch")]
    Search,
}

/// Coarse grouping of methods. Chain and star plans overlap (a chain plan
/// is usually also a star plan, and several star rows of the genus-three
/// table admit chain plans), so they form one gluing family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum MethodFamily {
    Table,
    Rotational,
    Gluing,
    Symplectic,
}

impl MethodTag {
    pub const ALL: [MethodTag; 9] = [
        MethodTag::Torus,
        MethodTag::Involution,
        MethodTag::Rotation,
        MethodTag::Chain,
        MethodTag::Star,
        MethodTag::StarFt,
        MethodTag::PermAddition,
        MethodTag::Root,
        MethodTag::Search,
    ];

    pub fn family(self) -> MethodFamily {
        match self {
            MethodTag::Torus => MethodFamily::Table,
            MethodTag::Involution | MethodTag::Rotation => MethodFamily::Rotational,
            MethodTag::Chain | MethodTag::Star | MethodTag::StarFt | MethodTag::PermAddition | MethodTag::Root => {
                MethodFamily::Gluing
            }
            MethodTag::Search => MethodFamily::Symplectic,
        }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodTag::Torus => "torus",
            MethodTag::Involution => "involution",
            MethodTag::Rotation => "rotation",
            MethodTag::Chain => "chain",
            MethodTag::Star => "star",
            MethodTag::StarFt => "starFT",
            MethodTag::PermAddition => "permAddition",
            MethodTag::Root => "root",
            MethodTag::Search => "symplecticSearch",
        })
    }
}

impl FromStr for MethodTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MethodTag::ALL
            .into_iter()
            .find(|m| m.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("unknown method `{s}`") })
    }
}

/// A certified word for a data set.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Synthesis {
    pub data_set: DataSet,
    pub word: TwistWord,
    pub method: MethodTag,
    pub certificate: CertificateReport,
    /// The gluing plan, for the chain and star methods.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<CompatPlan>,
}

/// Which relation words a plan may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Style {
    /// Chain relations: even chains anywhere, odd chains from genus two,
    /// junctions only at the chain boundaries `d1`, `d3`.
    Chain,
    /// Star relations: junctions at any of `d1`, `d2`, `d3`.
    Star,
}

impl Style {
    fn allows(self, form: StarForm, h: u32) -> bool {
        match (self, form) {
            (_, StarForm::Max | StarForm::Quad) => true,
            (Style::Star, StarForm::Odd) => true,
            _ => h >= 2,
        }
    }

    fn boundary(self, form: StarForm, h: u32, z: usize) -> Option<ConePair> {
        if self == Style::Chain && z == 1 {
            return None;
        }
        form.boundaries(h)[z]
    }

    /// The block word on handles `offset+1 ..= offset+h`.
    fn block(self, form: StarForm, h: u32, offset: u32) -> Vec<(CurveId, i64)> {
        match self {
            Style::Chain => {
                let k = match form {
                    StarForm::Max | StarForm::Quad => 2 * h,
                    StarForm::Even | StarForm::Odd => 2 * h + 1,
                };
                let sq = matches!(form, StarForm::Quad | StarForm::Odd);
                let chain = lickorish_chain(k as usize, h).expect("chain fits the block");
                chain
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| (c.shifted(offset), if i == 0 && sq { 2 } else { 1 }))
                    .collect()
            }
            Style::Star if h == 1 && form == StarForm::Odd => {
                vec![(CurveId::a(1 + offset), 2), (CurveId::a_prime(1 + offset), 1), (CurveId::b(1 + offset), 1)]
            }
            Style::Star => star_block(form, h, offset, true),
        }
    }
}

/// One block of a plan: the periodic map of a relation word raised to
/// `exponent = beta * unit`, where `beta = degree / n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Component {
    pub form: StarForm,
    pub genus: u32,
    pub beta: u32,
    pub unit: u32,
    pub exponent: i64,
    /// Data set of the block map after the power.
    pub data_set: DataSet,
}

impl Component {
    fn degree(&self) -> u32 {
        self.form.degree(self.genus)
    }

    /// Fixed point of the powered map at boundary `z`.
    fn pair_at(&self, z: usize) -> ConePair {
        let b = self.form.boundaries(self.genus)[z].expect("boundary exists");
        b.trace(self.beta * self.unit).expect("junction pairs have order n")
    }

    /// `mu = (m / gcd(m, N)) * x^+` with `x` the boundary residue.
    fn mu(&self, z: usize) -> i64 {
        let n = self.degree() as i64;
        let x = self.form.boundaries(self.genus)[z].expect("boundary exists").c as i64;
        let m = self.beta as i64 * self.unit as i64;
        (m / gcd(m as u64, n as u64) as i64) * inv_mod(x, n).expect("boundary residues are units")
    }
}

/// An annulus joining the fixed points at boundary `left.1` of component
/// `left.0` and boundary `right.1` of component `right.0`; the word picks up
/// `T_curve^(-eta)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Junction {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub pairs: (ConePair, ConePair),
    pub mu: (i64, i64),
    pub eta: i64,
    pub curve: CurveId,
}

/// Where the extra handle of a self-junction sits relative to the blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Layout {
    /// Before component `i`, whose `a1'` becomes the connecting `c` curve.
    Prime(usize),
    /// After component `i`, whose last `a` curve becomes the connecting `c` curve.
    Tail(usize),
    /// Between components `i` and `i + 1`, which are also joined linearly.
    Bridge(usize),
}

/// A gluing plan: a linear tuple of components, adjacent ones joined along
/// compatible fixed points, and at most one self-junction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CompatPlan {
    pub n: u32,
    pub style: Style,
    pub components: Vec<Component>,
    pub junctions: Vec<Junction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub self_junction: Option<Junction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layout: Option<Layout>,
    /// Data set of the glued map.
    pub data_set: DataSet,
}

impl CompatPlan {
    pub fn genus(&self) -> u32 {
        self.components.iter().map(|c| c.genus).sum::<u32>() + u32::from(self.self_junction.is_some())
    }

    /// Junction residues cancel (`mu + mu' = 0 mod n`, or `1` at a root
    /// junction), every `eta` is integral and the genus adds up.
    pub fn bookkeeping_ok(&self, root: bool) -> bool {
        let n = self.n as i64;
        let linear = self.junctions.iter().all(|j| (j.mu.0 + j.mu.1) % n == 0 && j.eta * n == j.mu.0 + j.mu.1);
        let closing = self.self_junction.as_ref().is_none_or(|j| {
            let want = if root { 1 } else { 0 };
            (j.mu.0 + j.mu.1 - want) % n == 0 && j.eta * n == j.mu.0 + j.mu.1 - want
        });
        let genus = if root { self.genus() - 1 } else { self.genus() };
        linear && closing && self.data_set.genus().ok() == Some(genus)
    }

    /// The word `prod W_i^(m_i) prod T_gamma^(-eta)`.
    pub fn word(&self) -> Result<TwistWord> {
        let g = self.genus();
        let mut offsets = Vec::new();
        let mut next = 0;
        let mut new_handle = None;
        for (i, c) in self.components.iter().enumerate() {
            if self.layout == Some(Layout::Prime(i)) {
                next += 1;
                new_handle = Some(next);
            }
            offsets.push(next);
            next += c.genus;
            if matches!(self.layout, Some(Layout::Tail(j) | Layout::Bridge(j)) if j == i) {
                next += 1;
                new_handle = Some(next);
            }
        }
        let mut syl = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            let off = offsets[i];
            let mut block = self.style.block(c.form, c.genus, off);
            let prime = CurveId::a_prime(off + 1);
            let tail = CurveId::a(off + c.genus);
            let relabel = |block: &mut Vec<(CurveId, i64)>, from: CurveId, to: CurveId| {
                for s in block.iter_mut().filter(|s| s.0 == from) {
                    s.0 = to;
                }
            };
            match self.layout {
                Some(Layout::Prime(j)) if j == i => relabel(&mut block, prime, CurveId::c(off)),
                Some(Layout::Tail(j)) if j == i => relabel(&mut block, tail, CurveId::c(off + c.genus)),
                Some(Layout::Bridge(j)) if j == i => {
                    let from = if c.form.has_tail() && c.genus >= 2 { tail } else { prime };
                    relabel(&mut block, from, CurveId::c(off + c.genus));
                }
                Some(Layout::Bridge(j)) if j + 1 == i => relabel(&mut block, prime, CurveId::c(off)),
                _ => {}
            }
            for _ in 0..c.exponent.unsigned_abs() {
                syl.extend(block.iter().map(|&(cv, e)| (cv, e * c.exponent.signum())));
            }
        }
        for j in self.junctions.iter().chain(&self.self_junction) {
            syl.push((j.curve, -j.eta));
        }
        let _ = new_handle;
        TwistWord::new(g, syl)
    }
}

type Multiset = BTreeMap<ConePair, u32>;

fn ms_add(ms: &mut Multiset, pairs: &[ConePair]) {
    for &p in pairs {
        *ms.entry(p).or_default() += 1;
    }
}

fn ms_remove(ms: &mut Multiset, p: ConePair) -> bool {
    match ms.get_mut(&p) {
        Some(k) => {
            *k -= 1;
            if *k == 0 {
                ms.remove(&p);
            }
            true
        }
        None => false,
    }
}

/// Number of pairs of `have` exceeding `want`.
fn ms_excess(have: &Multiset, want: &Multiset) -> u32 {
    have.iter().map(|(p, k)| k.saturating_sub(*want.get(p).unwrap_or(&0))).sum()
}

fn units(n: u32) -> impl Iterator<Item = u32> {
    (1..n).filter(move |u| gcd(*u as u64, n as u64) == 1)
}

/// What the plan search is asked to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Goal {
    Linear,
    /// One self-junction closing up compatible fixed points.
    SelfCompatible,
    /// One self-junction on the distinguished pairs `(a, n), (b, n)` of a
    /// data set realized linearly.
    Root(u32, u32),
}

#[derive(Debug, Clone)]
struct Placed {
    comp: Component,
    left: Option<usize>,
    right: Option<usize>,
}

/// Caps the plan search.
const NODE_CAP: u64 = 400_000;
const PLAN_CAP: usize = 256;

struct Planner {
    n: u32,
    style: Style,
    goal: Goal,
    /// Genus spanned by the components.
    genus: u32,
    g0: u32,
    target: Multiset,
    forced_first: Option<(StarForm, u32, u32)>,
    nodes: u64,
    plans: Vec<CompatPlan>,
}

impl Planner {
    fn new(d: &DataSet, style: Style, goal: Goal) -> Result<Self> {
        let g = d.genus()?;
        let extra = u32::from(goal == Goal::SelfCompatible);
        if g < 1 + extra || d.g0 < extra {
            return Err(Error::NotApplicable(format!("{d} has no room for a self-junction")));
        }
        let mut target = Multiset::new();
        ms_add(&mut target, d.pairs());
        Ok(Planner {
            n: d.n,
            style,
            goal,
            genus: g - extra,
            g0: d.g0 - extra,
            target,
            forced_first: None,
            nodes: 0,
            plans: Vec::new(),
        })
    }

    fn slack(&self) -> u32 {
        if self.goal == Goal::SelfCompatible {
            2
        } else {
            0
        }
    }

    fn component(&self, form: StarForm, h: u32, unit: u32) -> Option<Component> {
        let deg = form.degree(h);
        if !deg.is_multiple_of(self.n) || !self.style.allows(form, h) {
            return None;
        }
        let beta = deg / self.n;
        let signed =
            if self.style == Style::Chain && 2 * unit > self.n { unit as i64 - self.n as i64 } else { unit as i64 };
        let data_set = form.data_set(h)?.power(beta * unit).ok()?;
        Some(Component { form, genus: h, beta, unit, exponent: beta as i64 * signed, data_set })
    }

    fn run(&mut self) -> Result<()> {
        let firsts: Vec<(StarForm, u32, u32)> = match self.forced_first {
            Some(f) => vec![f],
            None => {
                let mut v = Vec::new();
                for h in 1..=self.genus {
                    for form in StarForm::ALL {
                        for u in units(self.n) {
                            v.push((form, h, u));
                        }
                    }
                }
                v
            }
        };
        for (form, h, u) in firsts {
            let Some(comp) = self.component(form, h, u) else { continue };
            if comp.genus > self.genus || comp.data_set.g0 > self.g0 {
                continue;
            }
            let mut open = Multiset::new();
            ms_add(&mut open, comp.data_set.pairs());
            let (g, g0) = (comp.genus, comp.data_set.g0);
            let mut placed = vec![Placed { comp, left: None, right: None }];
            self.extend(&mut placed, g, g0, &mut open);
            if self.plans.len() >= PLAN_CAP || self.nodes > NODE_CAP {
                break;
            }
        }
        if self.nodes > NODE_CAP && self.plans.is_empty() {
            return Err(Error::BudgetExhausted);
        }
        Ok(())
    }

    fn extend(&mut self, placed: &mut Vec<Placed>, genus: u32, g0: u32, open: &mut Multiset) {
        self.nodes += 1;
        if self.nodes > NODE_CAP || self.plans.len() >= PLAN_CAP {
            return;
        }
        if genus == self.genus && g0 == self.g0 {
            self.finish(placed, open);
        }
        if genus >= self.genus {
            return;
        }
        let last = placed.len() - 1;
        let lc = placed[last].comp.clone();
        for z in 0..3 {
            if placed[last].left == Some(z) || self.style.boundary(lc.form, lc.genus, z).is_none() {
                continue;
            }
            let p = lc.pair_at(z);
            if !ms_remove(open, p) {
                continue;
            }
            placed[last].right = Some(z);
            for h in 1..=self.genus - genus {
                for form in StarForm::ALL {
                    for z2 in 0..3 {
                        let Some(b) = self.style.boundary(form, h, z2) else { continue };
                        // x * u^-1 = -c (mod n) fixes the unit of the new block.
                        let n = self.n as i64;
                        let Some(xinv) = inv_mod(b.c as i64, n) else { continue };
                        let Some(u) = inv_mod(rem(-(p.c as i64) * xinv, n), n) else { continue };
                        let Some(comp) = self.component(form, h, u as u32) else { continue };
                        let q = comp.pair_at(z2);
                        if !(q.c + p.c).is_multiple_of(self.n) {
                            continue;
                        }
                        let g0n = g0 + comp.data_set.g0;
                        if g0n > self.g0 {
                            continue;
                        }
                        let mut open2 = open.clone();
                        ms_add(&mut open2, comp.data_set.pairs());
                        if !ms_remove(&mut open2, q) || ms_excess(&open2, &self.target) > self.slack() + 1 {
                            continue;
                        }
                        placed.push(Placed { comp, left: Some(z2), right: None });
                        self.extend(placed, genus + h, g0n, &mut open2);
                        placed.pop();
                    }
                }
            }
            placed[last].right = None;
            ms_add(open, &[p]);
        }
    }

    fn junctions(&self, placed: &[Placed]) -> Vec<Junction> {
        (0..placed.len() - 1)
            .map(|i| {
                let (a, b) = (&placed[i], &placed[i + 1]);
                let (za, zb) = (a.right.unwrap(), b.left.unwrap());
                let mu = (a.comp.mu(za), b.comp.mu(zb));
                Junction {
                    left: (i, za),
                    right: (i + 1, zb),
                    pairs: (a.comp.pair_at(za), b.comp.pair_at(zb)),
                    mu,
                    eta: (mu.0 + mu.1).div_euclid(self.n as i64),
                    curve: CurveId::gamma(i as u32 + 1),
                }
            })
            .collect()
    }

    fn finish(&mut self, placed: &[Placed], open: &Multiset) {
        let junctions = self.junctions(placed);
        let components: Vec<Component> = placed.iter().map(|p| p.comp.clone()).collect();
        let base = CompatPlan {
            n: self.n,
            style: self.style,
            components,
            junctions,
            self_junction: None,
            layout: None,
            data_set: DataSet::new(0, 0, 0, []),
        };
        match self.goal {
            Goal::Linear => {
                if *open == self.target {
                    let mut plan = base;
                    plan.data_set = self.data_set(open, 0);
                    self.plans.push(plan);
                }
            }
            Goal::SelfCompatible | Goal::Root(..) => {
                let style = self.style;
                let free: Vec<(usize, usize)> = placed
                    .iter()
                    .enumerate()
                    .flat_map(|(i, p)| {
                        (0..3)
                            .filter(move |&z| {
                                p.left != Some(z)
                                    && p.right != Some(z)
                                    && style.boundary(p.comp.form, p.comp.genus, z).is_some()
                            })
                            .map(move |z| (i, z))
                    })
                    .collect();
                for (k, &(i, zi)) in free.iter().enumerate() {
                    for &(j, zj) in &free[k + 1..] {
                        let (pi, pj) = (placed[i].comp.pair_at(zi), placed[j].comp.pair_at(zj));
                        let n = self.n;
                        let (eta, rest) = match self.goal {
                            Goal::Root(a, b) => {
                                let ok = (pi.c, pj.c) == (a, b) || (pi.c, pj.c) == (b, a);
                                if !ok || *open != self.target {
                                    continue;
                                }
                                let s = placed[i].comp.mu(zi) + placed[j].comp.mu(zj) - 1;
                                if s % n as i64 != 0 {
                                    continue;
                                }
                                (s / n as i64, open.clone())
                            }
                            _ => {
                                if (pi.c + pj.c) % n != 0 {
                                    continue;
                                }
                                let mut rest = open.clone();
                                if !ms_remove(&mut rest, pi) || !ms_remove(&mut rest, pj) || rest != self.target {
                                    continue;
                                }
                                let s = placed[i].comp.mu(zi) + placed[j].comp.mu(zj);
                                if s % n as i64 != 0 {
                                    continue;
                                }
                                (s / n as i64, rest)
                            }
                        };
                        let Some((layout, handle)) = self.layout(placed, (i, zi), (j, zj)) else { continue };
                        let mut plan = base.clone();
                        plan.layout = Some(layout);
                        if let Layout::Bridge(b) = layout {
                            plan.junctions[b].curve = CurveId::a_prime(handle);
                        }
                        plan.self_junction = Some(Junction {
                            left: (i, zi),
                            right: (j, zj),
                            pairs: (pi, pj),
                            mu: (placed[i].comp.mu(zi), placed[j].comp.mu(zj)),
                            eta,
                            curve: CurveId::a(handle),
                        });
                        plan.data_set = match self.goal {
                            Goal::Root(..) => self.data_set(&rest, 0),
                            _ => self.data_set(&rest, 1),
                        };
                        self.plans.push(plan);
                    }
                }
            }
        }
    }

    /// The handle layout for a self-junction, with the index of the new handle.
    fn layout(&self, placed: &[Placed], (i, zi): (usize, usize), (j, zj): (usize, usize)) -> Option<(Layout, u32)> {
        if self.style != Style::Star {
            return None;
        }
        let start = |k: usize| placed[..k].iter().map(|p| p.comp.genus).sum::<u32>();
        if i == j {
            let c = &placed[i].comp;
            let zs = [zi.min(zj), zi.max(zj)];
            if zs.contains(&1) && c.form.has_prime() {
                return Some((Layout::Prime(i), start(i) + 1));
            }
            if zs == [0, 2] && c.form.has_tail() && c.genus >= 2 {
                return Some((Layout::Tail(i), start(i) + c.genus + 1));
            }
            return None;
        }
        let (a, b) = (&placed[i].comp, &placed[j].comp);
        let left_ok = (a.form.has_tail() && a.genus >= 2) || (a.form.has_prime() && a.genus == 1);
        if j == i + 1 && left_ok && b.form.has_prime() {
            return Some((Layout::Bridge(i), start(j) + 1));
        }
        None
    }

    fn data_set(&self, open: &Multiset, extra_g0: u32) -> DataSet {
        let pairs: Vec<ConePair> = open.iter().flat_map(|(p, k)| std::iter::repeat_n(*p, *k as usize)).collect();
        let r = u32::from(pairs.is_empty());
        DataSet::new(self.n, self.g0 + extra_g0, r, pairs)
    }
}

fn plans(d: &DataSet, style: Style, goal: Goal) -> Result<Vec<CompatPlan>> {
    d.validate().ok.then_some(()).ok_or_else(|| Error::InvalidDataSet(d.to_string()))?;
    let mut p = Planner::new(d, style, goal)?;
    p.run()?;
    Ok(p.plans)
}

/// Linear gluing plans realizing `d` in the given style. Chain and star
/// realizability are computed independently.
pub fn plan_linear(d: &DataSet, style: Style) -> Result<Vec<CompatPlan>> {
    plans(d, style, Goal::Linear)
}

/// Star plans realizing `d` with one self-junction.
pub fn plan_self_compatible(d: &DataSet) -> Result<Vec<CompatPlan>> {
    plans(d, Style::Star, Goal::SelfCompatible)
}

fn certify_first(d: &DataSet, plans: Vec<CompatPlan>, method: MethodTag) -> Result<Synthesis> {
    let mut last = None;
    for plan in plans {
        let word = plan.word()?;
        let certificate = lefschetz_certify(&word, d);
        if certificate.strong() {
            return Ok(Synthesis { data_set: d.clone(), word, method, certificate, plan: Some(plan) });
        }
        last = Some(certificate);
    }
    Err(match (method, last) {
        (MethodTag::Chain, None) => Error::NotChainRealizable,
        (_, None) => Error::NotStarRealizable,
        _ => Error::NoCertifiedExponent,
    })
}

/// Chain method.
pub fn chain_word(d: &DataSet) -> Result<Synthesis> {
    certify_first(d, plan_linear(d, Style::Chain)?, MethodTag::Chain)
}

/// Star method without self-junctions.
pub fn star_word(d: &DataSet) -> Result<Synthesis> {
    certify_first(d, plan_linear(d, Style::Star)?, MethodTag::Star)
}

/// Star method with one self-junction.
pub fn star_ft_word(d: &DataSet) -> Result<Synthesis> {
    certify_first(d, plan_self_compatible(d)?, MethodTag::StarFt)
}

/// Independent realizability flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Realizability {
    pub chain: bool,
    pub star: bool,
    pub star_ft: bool,
    pub rotational: bool,
}

pub fn realizability(d: &DataSet) -> Result<Realizability> {
    let kind = d.classify()?;
    let has = |r: Result<Vec<CompatPlan>>| r.map(|p| !p.is_empty()).unwrap_or(false);
    Ok(Realizability {
        chain: has(plan_linear(d, Style::Chain)),
        star: has(plan_linear(d, Style::Star)),
        star_ft: has(plan_self_compatible(d)),
        rotational: matches!(kind, ClassKind::FreeRotation | ClassKind::NonFreeRotation),
    })
}

fn certified(d: &DataSet, word: TwistWord, method: MethodTag) -> Option<Synthesis> {
    let certificate = lefschetz_certify(&word, d);
    certificate.strong().then(|| Synthesis { data_set: d.clone(), word, method, certificate, plan: None })
}

/// Genus one: the first power of `T_a T_b` or `T_a^2 T_b` that certifies.
pub fn torus_word(d: &DataSet) -> Result<Synthesis> {
    if d.genus()? != 1 {
        return Err(Error::NotGenusOne);
    }
    let six = named_relation_word(NamedRelation::TorusOrder6)?;
    let four = named_relation_word(NamedRelation::TorusOrder4)?;
    let candidates = (1..6).map(|k| six.power(k)).chain([1, 3].map(|k| four.power(k)));
    candidates.into_iter().find_map(|w| certified(d, w, MethodTag::Torus)).ok_or(Error::NoCertifiedExponent)
}

fn handle_swap(i: u32, g: u32) -> TwistWord {
    named_relation_word(NamedRelation::HandleSwap(i, g)).expect("adjacent handles exist")
}

/// Non-free involutions `(2, g0; (1,2) x 2k)`.
pub fn involution_word(d: &DataSet) -> Result<Synthesis> {
    let g = d.genus()?;
    if d.n != 2 || d.pairs().is_empty() {
        return Err(Error::NotInvolution);
    }
    let k = d.pairs().len() as u32 / 2;
    let mut w = TwistWord::identity(g);
    for i in 1..=d.g0 {
        let e = if i % 2 == 1 { 1 } else { -1 };
        w = w.concat(&handle_swap(2 * i - 1, g).power(e))?;
    }
    if k > 1 {
        let c = u32::from(d.g0.is_multiple_of(2));
        for j in 2 * d.g0 + 1..=g {
            let e = if (j + c) % 2 == 0 { 2 } else { -2 };
            let t = TwistWord::new(g, [(CurveId::a_prime(j), 1), (CurveId::b(j), 1), (CurveId::a(j), 1)])?;
            w = w.concat(&t.power(e))?;
        }
    }
    certified(d, w, MethodTag::Involution).ok_or(Error::NoCertifiedExponent)
}

/// Product of adjacent handle swaps moving the handles from the order
/// `1..=len` (offset by `base`) into the order `target`.
fn permutation_word(target: &[u32], base: u32, g: u32) -> TwistWord {
    let mut cur: Vec<u32> = target.to_vec();
    let mut w = TwistWord::identity(g);
    // Bubble sort `cur` back to the identity, recording the swaps.
    let mut swaps = Vec::new();
    for end in (1..cur.len()).rev() {
        for i in 0..end {
            if cur[i] > cur[i + 1] {
                cur.swap(i, i + 1);
                swaps.push(base + i as u32 + 1);
            }
        }
    }
    for s in swaps.into_iter().rev() {
        w = w.concat(&handle_swap(s, g)).expect("same genus");
    }
    w
}

/// Reverses blocks `from..n` of `h` handles each.
fn reversal(from: u32, n: u32, h: u32, g: u32) -> TwistWord {
    let mut target = Vec::new();
    for b in (from..n).rev() {
        target.extend((0..h).map(|k| b * h + k + 1));
    }
    let base = from * h;
    let target: Vec<u32> = target.into_iter().map(|x| x - base).collect();
    permutation_word(&target, base, g)
}

/// Rotations `(n, g0;)` and `(n, g0; (s,n), (n-s,n))`, assembled from block
/// reversals. `-I` corrections on the first block make the `n`-th power the
/// identity, then the first certified exponent coprime to `n` is returned.
pub fn rotation_word(d: &DataSet) -> Result<Synthesis> {
    let kind = d.classify()?;
    let g = d.genus()?;
    let n = d.n;
    let h = match kind {
        ClassKind::FreeRotation if d.g0 >= 2 => d.g0 - 1,
        ClassKind::NonFreeRotation if d.pairs().len() == 2 => d.g0,
        _ => return Err(Error::NotRotational),
    };
    if h == 0 {
        return Err(Error::NotRotational);
    }
    let r = reversal(0, n, h, g).concat(&reversal(1, n, h, g))?;
    let p = evaluate(&r).pow(n);
    let mut fix = TwistWord::identity(g);
    for k in 1..=h {
        let i = 2 * (k as usize - 1);
        if p.matrix()[(i, i)] == -1 {
            let t = TwistWord::new(g, [(CurveId::a(k), 1), (CurveId::b(k), 1)])?.power(3);
            fix = fix.concat(&t)?;
        }
    }
    let r = r.concat(&fix)?;
    units(n).find_map(|t| certified(d, r.power(t as i64), MethodTag::Rotation)).ok_or(Error::NoCertifiedExponent)
}

/// Adds the rotational block `(n,1;(c,n),(n-c,n))`, realized by `W_{4n}^{4c^+}`,
/// to a star-realizable map of odd order, gluing along one fixed point.
pub fn perm_addition_word(base: &DataSet, c: u32) -> Result<Synthesis> {
    let n = base.n;
    let na = |why: &str| Error::NotApplicable(format!("permutation addition: {why}"));
    if !base.is_valid() {
        return Err(Error::InvalidDataSet(base.to_string()));
    }
    if n.is_multiple_of(2) {
        return Err(na("the order must be odd"));
    }
    if base.genus()? == 0 {
        return Err(na("degenerate base"));
    }
    let Some(cp) = inv_mod(c as i64, n as i64).filter(|_| !c.is_multiple_of(n)) else {
        return Err(na("c must be a unit"));
    };
    let mut last = na("no compatible fixed point");
    for z in [0usize, 1] {
        let mut planner = Planner {
            n,
            style: Style::Star,
            goal: Goal::Linear,
            genus: 0,
            g0: 0,
            target: Multiset::new(),
            forced_first: Some((StarForm::Quad, n, cp as u32)),
            nodes: 0,
            plans: Vec::new(),
        };
        let Some(first) = planner.component(StarForm::Quad, n, cp as u32) else { continue };
        let (joined, other) = (first.pair_at(z), first.pair_at(1 - z));
        let partner = ConePair::new(n - joined.c, n);
        if !base.pairs().contains(&partner) {
            continue;
        }
        let mut pairs: Vec<ConePair> = base.pairs().to_vec();
        let at = pairs.iter().position(|p| *p == partner).expect("present");
        pairs.remove(at);
        pairs.push(other);
        let d = DataSet::new(n, base.g0 + 1, u32::from(pairs.is_empty()), pairs);
        planner.genus = d.genus()?;
        planner.g0 = d.g0;
        ms_add(&mut planner.target, d.pairs());
        planner.run()?;
        let found: Vec<CompatPlan> =
            planner.plans.into_iter().filter(|p| p.junctions.first().map(|j| j.left.1) == Some(z)).collect();
        match certify_first(&d, found, MethodTag::PermAddition) {
            Ok(s) => return Ok(s),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// A root of a Dehn twist built from a star plan.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RootWord {
    pub word: TwistWord,
    /// `word^degree` is the twist about `curve` on homology.
    pub curve: CurveId,
    pub degree: u32,
    pub plan: CompatPlan,
}

impl RootWord {
    /// `evaluate(word)^degree == evaluate(T_curve)`.
    pub fn verify(&self) -> Result<bool> {
        let m = evaluate(&self.word).pow(self.degree);
        Ok(m == transvection(self.curve, 1, self.word.genus())?)
    }
}

/// A degree-`n` root of `T_c` on genus `genus(dbar) + 1` from a star plan of
/// `dbar` whose fixed points `(a,n)` and `(b,n)` satisfy `a + b = ab (mod n)`.
pub fn root_word(dbar: &DataSet, a: u32, b: u32) -> Result<RootWord> {
    let n = dbar.n as u64;
    if (a as u64 + b as u64) % n != (a as u64 * b as u64) % n {
        return Err(Error::NotRootRealizable(format!("{a} + {b} != {a}*{b} mod {n}")));
    }
    let found = plans(dbar, Style::Star, Goal::Root(a, b)).map_err(|e| Error::NotRootRealizable(e.to_string()))?;
    for plan in found {
        let word = plan.word()?;
        let curve = plan.self_junction.as_ref().expect("root plans close up").curve;
        let root = RootWord { word, curve, degree: dbar.n, plan };
        if root.verify()? {
            return Ok(root);
        }
    }
    Err(Error::NotRootRealizable(format!("no star plan of {dbar} closes up on ({a},{n}), ({b},{n})")))
}

/// `T_{a2} prod_{i<g} (T_{ci} T_{b_{i+1}})`: the `W_{4h}` star word on the
/// handles `2..=g` (`h = g - 1`) with `c1` in place of `a2'`. Its `4h`-th power
/// is `T_{a1}^{2h}`; see [`fractional_root_degree`].
pub fn fractional_root_word(g: u32) -> Result<TwistWord> {
    if g < 2 {
        return Err(Error::IndexOutOfRange(format!("fractional root in genus {g}")));
    }
    let mut syl = vec![(CurveId::a(2), 1)];
    for i in 1..g {
        syl.extend([(CurveId::c(i), 1), (CurveId::b(i + 1), 1)]);
    }
    TwistWord::new(g, syl)
}

/// Degree `(m, n)` with `fractional_root_word(g)^n = T_{a1}^m`: `(2g-2, 4g-4)`.
/// At `g = 2` this also gives `(2g, 4g)`, since `(2, 4)` doubles to `(4, 8)`;
/// from `g = 3` on the `4g`-th power is not a power of `T_{a1}` on homology.
pub fn fractional_root_degree(g: u32) -> (u32, u32) {
    (2 * g - 2, 4 * g - 4)
}

/// Options for [`synthesize_with`].
#[derive(Debug, Clone)]
pub struct SynthesisOptions {
    /// Run the symplectic search when the constructive methods fail.
    pub search: bool,
    pub budget: Budget,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions { search: true, budget: Budget::default() }
    }
}

/// Runs one method alone. Permutation addition and roots take extra
/// arguments and are not available here.
pub fn run_method(tag: MethodTag, d: &DataSet, opts: &SynthesisOptions) -> Result<Synthesis> {
    d.validate().ok.then_some(()).ok_or_else(|| Error::InvalidDataSet(d.to_string()))?;
    let d = &d.canonical();
    match tag {
        MethodTag::Torus => torus_word(d),
        MethodTag::Involution => involution_word(d),
        MethodTag::Rotation => rotation_word(d),
        MethodTag::Chain => chain_word(d),
        MethodTag::Star => star_word(d),
        MethodTag::StarFt => star_ft_word(d),
        MethodTag::Search => symplectic_method(d, &opts.budget).map(|hit| Synthesis {
            data_set: d.clone(),
            word: hit.word,
            method: MethodTag::Search,
            certificate: hit.certificate,
            plan: None,
        }),
        MethodTag::PermAddition | MethodTag::Root => Err(Error::NotApplicable(format!("{tag} needs extra arguments"))),
    }
}

/// [`synthesize_with`] under the default options.
pub fn synthesize(d: &DataSet) -> Result<Synthesis> {
    synthesize_with(d, &SynthesisOptions::default())
}

type Method = fn(&DataSet) -> Result<Synthesis>;

/// Tries torus, involution, chain, star, star with self-junction, rotation
/// and finally the symplectic search, returning the first certified word.
pub fn synthesize_with(d: &DataSet, opts: &SynthesisOptions) -> Result<Synthesis> {
    d.validate().ok.then_some(()).ok_or_else(|| Error::InvalidDataSet(d.to_string()))?;
    let d = &d.canonical();
    let mut reasons = Vec::new();
    let methods: [(MethodTag, Method); 6] = [
        (MethodTag::Torus, torus_word),
        (MethodTag::Involution, involution_word),
        (MethodTag::Chain, chain_word),
        (MethodTag::Star, star_word),
        (MethodTag::StarFt, star_ft_word),
        (MethodTag::Rotation, rotation_word),
    ];
    for (tag, f) in methods {
        match f(d) {
            Ok(s) => return Ok(s),
            Err(e) => reasons.push((tag.to_string(), e.to_string())),
        }
    }
    if opts.search {
        match run_method(MethodTag::Search, d, opts) {
            Ok(s) => return Ok(s),
            Err(e) => reasons.push((MethodTag::Search.to_string(), e.to_string())),
        }
    }
    Err(Error::SynthesisFailed(reasons))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(s: &str) -> DataSet {
        s.parse().unwrap()
    }

    fn no_search() -> SynthesisOptions {
        SynthesisOptions { search: false, ..Default::default() }
    }

    #[test]
    fn method_tags_round_trip() {
        for m in MethodTag::ALL {
            assert_eq!(m.to_string().parse::<MethodTag>().unwrap(), m);
        }
        assert_eq!(MethodTag::StarFt.family(), MethodFamily::Gluing);
        assert_eq!(serde_json::to_string(&MethodTag::StarFt).unwrap(), "\"starFT\"");
    }

    #[test]
    fn chain_examples() {
        let s = chain_word(&ds("(3,0;((1,3),2),((2,3),2))")).unwrap();
        assert!(s.certificate.strong());
        for r in crate::tables::rows(3).unwrap() {
            if r.algorithm == crate::tables::Algorithm::Chain {
                assert!(chain_word(&r.data_set).unwrap().certificate.strong(), "{}", r.data_set);
            }
        }
        // Odd chains need genus two, so W_3 blocks are star-only; the chain
        // plan for this row squares two W_6 blocks instead.
        let s = chain_word(&ds("(3,0;((1,3),4),(2,3))")).unwrap();
        assert!(s.plan.unwrap().components.iter().all(|c| c.beta == 2));
    }

    #[test]
    fn star_example_with_two_junctions() {
        // Three genus-one blocks of W_4 with units 1, 3, 1: both etas are 1.
        let d = ds("(4,0;(1,2),(1,2),(1,2),(1,4),(1,4))");
        let s = star_word(&d).unwrap();
        let plan = s.plan.unwrap();
        assert_eq!(plan.components.len(), 3);
        assert!(plan.junctions.iter().all(|j| j.eta.abs() >= 1));
    }

    #[test]
    fn self_junction_examples() {
        let s = star_ft_word(&ds("(4,1;(1,2),(1,2))")).unwrap();
        assert_eq!(s.method, MethodTag::StarFt);
        let j = s.plan.as_ref().unwrap().self_junction.clone().unwrap();
        assert_eq!(j.eta, 1);
        assert!(star_ft_word(&ds("(2,2,1;)")).is_ok());
        assert!(star_ft_word(&ds("(3,1;(1,3),(2,3))")).is_ok());
    }

    #[test]
    fn involutions() {
        for d in ["(2,0;((1,2),6))", "(2,1;(1,2),(1,2))", "(2,0;((1,2),8))", "(2,1;((1,2),4))", "(2,2;(1,2),(1,2))"] {
            assert!(involution_word(&ds(d)).is_ok(), "{d}");
        }
        assert!(matches!(involution_word(&ds("(2,2,1;)")), Err(Error::NotInvolution)));
    }

    #[test]
    fn rotations() {
        for d in
            ["(2,2,1;)", "(3,1;(1,3),(2,3))", "(3,2,1;)", "(4,1;(1,4),(3,4))", "(5,1;(1,5),(4,5))", "(3,2;(1,3),(2,3))"]
        {
            let s = rotation_word(&ds(d)).unwrap_or_else(|e| panic!("{d}: {e}"));
            assert!(s.certificate.strong());
        }
        assert!(matches!(rotation_word(&ds("(3,0;(1,3),(1,3),(1,3))")), Err(Error::NotRotational)));
    }

    #[test]
    fn torus_rows() {
        for r in crate::tables::rows(1).unwrap() {
            assert!(torus_word(&r.data_set).is_ok(), "{}", r.data_set);
        }
        assert!(matches!(torus_word(&ds("(2,0;((1,2),6))")), Err(Error::NotGenusOne)));
    }

    #[test]
    fn permutation_addition() {
        let s = perm_addition_word(&ds("(3,0;(1,3),(1,3),(1,3))"), 1).unwrap();
        assert_eq!(s.word.genus(), 4);
        let first = &s.plan.as_ref().unwrap().components[0];
        assert_eq!((first.form, first.genus, first.exponent), (StarForm::Quad, 3, 4));
        assert!(perm_addition_word(&ds("(2,0;((1,2),6))"), 1).is_err());
    }

    #[test]
    fn roots() {
        for g in 2..=5 {
            let n = 2 * g - 1;
            let dbar = ds(&format!("({n},0;({g},{n}),({g},{n}),({},{n}))", 2 * g - 2));
            let r = root_word(&dbar, g, 2 * g - 2).unwrap();
            assert!(r.verify().unwrap());
            assert_eq!(r.curve, CurveId::a(1));
            assert_eq!(r.word.genus(), g);
        }
        assert!(matches!(root_word(&ds("(3,0;(1,3),(1,3),(1,3))"), 1, 1), Err(Error::NotRootRealizable(_))));
    }

    #[test]
    fn fractional_roots() {
        let w = fractional_root_word(2).unwrap();
        assert_eq!(w.to_string(), "T_a2 T_c1 T_b2");
        assert_eq!(evaluate(&w).pow(8), transvection(CurveId::a(1), 4, 2).unwrap());
        for g in 2..=5 {
            let w = fractional_root_word(g).unwrap();
            let (m, n) = fractional_root_degree(g);
            assert_eq!(evaluate(&w).pow(n), transvection(CurveId::a(1), m as i64, g).unwrap());
        }
        let w = evaluate(&fractional_root_word(3).unwrap());
        assert_ne!(w.pow(12), transvection(CurveId::a(1), 6, 3).unwrap());
    }

    #[test]
    fn genus_two_tags() {
        for r in crate::tables::rows(2).unwrap() {
            let s = synthesize_with(&r.data_set, &no_search()).unwrap_or_else(|e| panic!("{}: {e}", r.data_set));
            assert!(matches!(s.method, MethodTag::Chain | MethodTag::Involution), "{} {}", r.data_set, s.method);
            assert!(s.certificate.strong());
        }
    }

    #[test]
    fn search_fallback() {
        let d = ds("(9,0;(1,3),(1,9),(5,9))");
        let s = synthesize(&d).unwrap();
        assert!(s.certificate.strong());
        assert_eq!(s.method.to_string(), "symplecticSearch");
    }

    #[test]
    fn failure_lists_every_method() {
        let Err(Error::SynthesisFailed(r)) = synthesize_with(&ds("(3,1,1;)"), &no_search()) else {
            panic!("free genus-one action has no certified word");
        };
        assert_eq!(r.len(), 6);
    }
}
