//! Deciding ε-interleavings by exhaustive search over leveled maps, and the
//! (truncated) interleaving distance built on that decision procedure.
//!
//! Both `R_f` and the smoothings are encoded on one grid `L` that holds
//! every critical value of both graphs and of their ε-smoothings. A
//! continuous function-preserving map into a smoothing then amounts to an
//! assignment of nodes to nodes and strands to strands per slot that keeps
//! attachments. The two composites are checked pointwise: for a source
//! element `x` at height `h`, pick any element `y` of the other graph inside
//! `φ(x)`; `ψ(y)` must lie in the component of `f⁻¹[h-2ε, h+2ε]` holding `x`.
//! Connectedness of `φ(x)` makes the choice of `y` irrelevant, and the
//! verifier re-checks every `y` anyway.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::ReebGraph;
use crate::levels::{merge_grid, window_components, LevelError, LeveledGraph, LeveledMap, MapError, Slot, WindowComps};
use crate::smoothing::truncation_mask;
use crate::value::{frac, int, Bracket, Ext, Value};

/// Default search-node budget per decision.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterleaveError {
    NegativeEps,
    TruncationOutOfRange,
    Level(LevelError),
}

impl fmt::Display for InterleaveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterleaveError::NegativeEps => f.write_str("eps must be non-negative"),
            InterleaveError::TruncationOutOfRange => f.write_str("truncation slope m must lie in [0, 1)"),
            InterleaveError::Level(e) => write!(f, "{}", e),
        }
    }
}

impl From<LevelError> for InterleaveError {
    fn from(e: LevelError) -> Self {
        InterleaveError::Level(e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavingCertificate {
    pub eps: Value,
    /// Truncation slope; zero for plain interleavings.
    pub m: Value,
    pub grid: Vec<Value>,
    /// `R_f → S_ε^{mε}(R_g)`.
    pub phi: LeveledMap,
    /// `R_g → S_ε^{mε}(R_f)`.
    pub psi: LeveledMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Interleaved(InterleavingCertificate),
    NotInterleaved,
    /// The node budget ran out first.
    Unknown,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Interleaved(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    Map(MapError),
    Truncated(Slot, usize),
    Composite { forward: bool, slot: Slot, index: usize },
    Level(LevelError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Map(e) => write!(f, "{}", e),
            VerifyError::Truncated(s, k) => write!(f, "image of {:?}#{} is truncated away", s, k),
            VerifyError::Composite { forward, slot, index } => write!(
                f,
                "{} composite differs from the 2eps map at {:?}#{}",
                if *forward { "first" } else { "second" },
                slot,
                index
            ),
            VerifyError::Level(e) => write!(f, "{}", e),
        }
    }
}

fn slot_index(s: Slot) -> usize {
    match s {
        Slot::Level(i) => 2 * i,
        Slot::Slab(i) => 2 * i + 1,
    }
}

/// Grid on which maps into `S_ε^{mε}` of either graph are exact, and on
/// which the 2ε composites are determined by their values at slots.
pub fn interleaving_grid(a: &ReebGraph, b: &ReebGraph, eps: Value, m: Value) -> Vec<Value> {
    let tau = m * eps;
    let mut all = Vec::new();
    for c in a.critical_values().into_iter().chain(b.critical_values()) {
        all.extend([c, c - eps, c + eps, c - eps * int(2), c + eps * int(2)]);
        if tau > Value::default() {
            all.extend([c - eps - tau, c - eps + tau, c + eps - tau, c + eps + tau]);
        }
    }
    merge_grid(all)
}

// ---------------------------------------------------------------------------
// A small finite-domain solver: variables with bitset domains and
// implications `x = v ⇒ y ∈ S`, kept arc consistent during backtracking.

const MAX_DOMAIN: usize = 128;

struct Imp {
    a: usize,
    va: u32,
    b: usize,
    allowed: u128,
}

struct Csp {
    dom: Vec<u128>,
    imps: Vec<Imp>,
    by_a: Vec<Vec<usize>>,
    by_b: Vec<Vec<usize>>,
}

enum Flow {
    Continue,
    Stop,
    Budget,
}

impl Csp {
    fn new(dom: Vec<u128>) -> Self {
        let n = dom.len();
        Csp { dom, imps: Vec::new(), by_a: vec![Vec::new(); n], by_b: vec![Vec::new(); n] }
    }

    fn imply(&mut self, a: usize, va: usize, b: usize, allowed: u128) {
        let id = self.imps.len();
        self.imps.push(Imp { a, va: va as u32, b, allowed });
        self.by_a[a].push(id);
        self.by_b[b].push(id);
    }

    fn propagate(&self, dom: &mut [u128], mut queue: Vec<usize>) -> bool {
        let mut queued = vec![false; dom.len()];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(v) = queue.pop() {
            queued[v] = false;
            if dom[v] == 0 {
                return false;
            }
            for &i in &self.by_b[v] {
                let imp = &self.imps[i];
                let bit = 1u128 << imp.va;
                if dom[imp.b] & imp.allowed == 0 && dom[imp.a] & bit != 0 {
                    dom[imp.a] &= !bit;
                    if dom[imp.a] == 0 {
                        return false;
                    }
                    if !queued[imp.a] {
                        queued[imp.a] = true;
                        queue.push(imp.a);
                    }
                }
            }
            if dom[v].count_ones() == 1 {
                for &i in &self.by_a[v] {
                    let imp = &self.imps[i];
                    if dom[v] != 1u128 << imp.va {
                        continue;
                    }
                    let nd = dom[imp.b] & imp.allowed;
                    if nd != dom[imp.b] {
                        if nd == 0 {
                            return false;
                        }
                        dom[imp.b] = nd;
                        if !queued[imp.b] {
                            queued[imp.b] = true;
                            queue.push(imp.b);
                        }
                    }
                }
            }
        }
        true
    }

    /// Calls `found` on every solution until it returns false. Returns
    /// false if the budget ran out.
    fn solve(&self, budget: &mut u64, found: &mut dyn FnMut(&[u128]) -> bool) -> bool {
        let mut dom = self.dom.clone();
        let all = (0..dom.len()).collect();
        if !self.propagate(&mut dom, all) {
            return true;
        }
        !matches!(self.search(dom, budget, found), Flow::Budget)
    }

    fn search(&self, dom: Vec<u128>, budget: &mut u64, found: &mut dyn FnMut(&[u128]) -> bool) -> Flow {
        let mut best: Option<(u32, usize)> = None;
        for (v, &d) in dom.iter().enumerate() {
            let c = d.count_ones();
            if c > 1 && best.map_or(true, |(bc, _)| c < bc) {
                best = Some((c, v));
                if c == 2 {
                    break;
                }
            }
        }
        let Some((_, v)) = best else {
            return if found(&dom) { Flow::Continue } else { Flow::Stop };
        };
        let mut bits = dom[v];
        while bits != 0 {
            let val = bits.trailing_zeros();
            bits &= bits - 1;
            if *budget == 0 {
                return Flow::Budget;
            }
            *budget -= 1;
            let mut d = dom.clone();
            d[v] = 1u128 << val;
            if self.propagate(&mut d, vec![v]) {
                match self.search(d, budget, found) {
                    Flow::Continue => {}
                    other => return other,
                }
            }
        }
        Flow::Continue
    }
}

/// Variable ids for the elements of a leveled graph.
struct Vars {
    node: Vec<usize>,
    strand: Vec<usize>,
}

impl Vars {
    fn new(lg: &LeveledGraph, base: usize) -> (Self, usize) {
        let mut next = base;
        let mut node = Vec::new();
        let mut strand = Vec::new();
        for ns in &lg.nodes {
            node.push(next);
            next += ns.len();
        }
        for ss in &lg.strands {
            strand.push(next);
            next += ss.len();
        }
        (Vars { node, strand }, next)
    }

    fn id(&self, s: Slot, k: usize) -> usize {
        match s {
            Slot::Level(i) => self.node[i] + k,
            Slot::Slab(i) => self.strand[i] + k,
        }
    }
}

fn full(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn mask_bits(mask: Option<&(Vec<Vec<bool>>, Vec<Vec<bool>>)>, lg: &LeveledGraph, s: Slot) -> u128 {
    let n = lg.slot_len(s);
    match mask {
        None => full(n),
        Some((nodes, strands)) => {
            let row = match s {
                Slot::Level(i) => &nodes[i],
                Slot::Slab(i) => &strands[i],
            };
            row.iter().enumerate().filter(|(_, &k)| k).fold(0, |acc, (j, _)| acc | 1u128 << j)
        }
    }
}

/// Continuity implications for a map `src → tgt` whose variables are `vars`.
fn continuity(csp: &mut Csp, src: &LeveledGraph, tgt: &LeveledGraph, vars: &Vars) {
    for (i, ss) in src.strands.iter().enumerate() {
        for (k, s) in ss.iter().enumerate() {
            let xv = vars.id(Slot::Slab(i), k);
            let lo = vars.id(Slot::Level(i), s.lower);
            let hi = vars.id(Slot::Level(i + 1), s.upper);
            for (t, ts) in tgt.strands[i].iter().enumerate() {
                csp.imply(xv, t, lo, 1u128 << ts.lower);
                csp.imply(xv, t, hi, 1u128 << ts.upper);
            }
            for n in 0..tgt.nodes[i].len() {
                let ok = tgt.strands[i].iter().enumerate().filter(|(_, t)| t.lower == n).fold(0, |a, (j, _)| a | 1u128 << j);
                csp.imply(lo, n, xv, ok);
            }
            for n in 0..tgt.nodes[i + 1].len() {
                let ok = tgt.strands[i].iter().enumerate().filter(|(_, t)| t.upper == n).fold(0, |a, (j, _)| a | 1u128 << j);
                csp.imply(hi, n, xv, ok);
            }
        }
    }
}

fn too_wide(lg: &LeveledGraph) -> bool {
    lg.nodes.iter().any(|n| n.len() > MAX_DOMAIN) || lg.strands.iter().any(|s| s.len() > MAX_DOMAIN)
}

fn extract(sol: &[u128], src: &LeveledGraph, vars: &Vars) -> LeveledMap {
    let get = |v: usize| sol[v].trailing_zeros() as usize;
    LeveledMap {
        nodes: (0..src.nodes.len()).map(|i| (0..src.nodes[i].len()).map(|k| get(vars.id(Slot::Level(i), k))).collect()).collect(),
        strands: (0..src.strands.len())
            .map(|i| (0..src.strands[i].len()).map(|k| get(vars.id(Slot::Slab(i), k))).collect())
            .collect(),
    }
}

/// All function-preserving leveled maps `a → b` on `grid`, up to `limit`.
/// `None` if the budget ran out first.
pub fn enumerate_maps(
    a: &ReebGraph,
    b: &ReebGraph,
    grid: &[Value],
    limit: usize,
    budget: u64,
) -> Result<Option<Vec<LeveledMap>>, InterleaveError> {
    let sa = LeveledGraph::subdivide(a, grid)?;
    let sb = LeveledGraph::subdivide(b, grid)?;
    if too_wide(&sb) {
        return Ok(None);
    }
    let (vars, n) = Vars::new(&sa, 0);
    let mut dom = vec![0u128; n];
    for s in sa.slots() {
        for k in 0..sa.slot_len(s) {
            dom[vars.id(s, k)] = full(sb.slot_len(s));
        }
    }
    let mut csp = Csp::new(dom);
    continuity(&mut csp, &sa, &sb, &vars);
    let mut out = Vec::new();
    let mut budget = budget;
    let complete = csp.solve(&mut budget, &mut |sol| {
        out.push(extract(sol, &sa, &vars));
        out.len() < limit
    });
    Ok(if complete || out.len() >= limit { Some(out) } else { None })
}

/// Everything derived from `(a, b, ε, m)` that both the search and the
/// verifier need.
struct Setup {
    eps: Value,
    grid: Vec<Value>,
    sa: LeveledGraph,
    sb: LeveledGraph,
    ua: LeveledGraph,
    ub: LeveledGraph,
    mask_a: Option<(Vec<Vec<bool>>, Vec<Vec<bool>>)>,
    mask_b: Option<(Vec<Vec<bool>>, Vec<Vec<bool>>)>,
}

impl Setup {
    fn new(a: &ReebGraph, b: &ReebGraph, eps: Value, m: Value, grid: Vec<Value>) -> Result<Self, InterleaveError> {
        if eps < Value::default() {
            return Err(InterleaveError::NegativeEps);
        }
        if m < Value::default() || m >= int(1) {
            return Err(InterleaveError::TruncationOutOfRange);
        }
        let sa = LeveledGraph::subdivide(a, &grid)?;
        let sb = LeveledGraph::subdivide(b, &grid)?;
        let ua = LeveledGraph::interlevel(a, eps, &grid)?;
        let ub = LeveledGraph::interlevel(b, eps, &grid)?;
        let tau = m * eps;
        let (mask_a, mask_b) = if tau > Value::default() {
            (Some(truncation_mask(&ua, tau)), Some(truncation_mask(&ub, tau)))
        } else {
            (None, None)
        };
        Ok(Setup { eps, grid, sa, sb, ua, ub, mask_a, mask_b })
    }
}

/// Window components of `g` around every slot height, radius `r`.
fn slot_windows(g: &ReebGraph, lg: &LeveledGraph, r: Value) -> Vec<WindowComps> {
    lg.slots().map(|s| {
        let h = lg.height(s);
        window_components(g, h - r, h + r)
    }).collect()
}

/// Elements of `sub` lying in the element `k` of `u` at slot `s`, the
/// same slot first. `w` holds the windows of `u`'s slots.
fn inner_elements(sub: &LeveledGraph, u: &LeveledGraph, w: &[WindowComps], s: Slot, k: usize) -> Vec<(Slot, usize)> {
    let h = u.height(s);
    let ws = &w[slot_index(s)];
    let cid = ws.of(u.rep(s, k));
    let mut out = Vec::new();
    let push_slot = |t: Slot, out: &mut Vec<(Slot, usize)>| {
        for j in 0..sub.slot_len(t) {
            if ws.of(sub.rep(t, j)) == cid {
                out.push((t, j));
            }
        }
    };
    push_slot(s, &mut out);
    for t in sub.slots() {
        if t == s {
            continue;
        }
        let ht = sub.height(t);
        if ht >= h - u.eps && ht <= h + u.eps {
            push_slot(t, &mut out);
        }
    }
    out
}

/// Composite implications `φ(x) = C ⇒ ψ(y_C) ∈ allowed`, for the direction
/// `a → S(b) → S²(a)`.
#[allow(clippy::too_many_arguments)]
fn composite(
    csp: &mut Csp,
    a: &ReebGraph,
    b: &ReebGraph,
    sa: &LeveledGraph,
    sb: &LeveledGraph,
    ua: &LeveledGraph,
    ub: &LeveledGraph,
    phi: &Vars,
    psi: &Vars,
    eps: Value,
) {
    let wb = slot_windows(b, ub, eps);
    let w2 = slot_windows(a, sa, eps * int(2));
    for s in sa.slots() {
        let w = &w2[slot_index(s)];
        for k in 0..sa.slot_len(s) {
            let xc = w.of(sa.rep(s, k));
            let xv = phi.id(s, k);
            for c in 0..ub.slot_len(s) {
                let Some(&(t, j)) = inner_elements(sb, ub, &wb, s, c).first() else {
                    // Cannot happen for a well-formed grid; forbid the value.
                    csp.imply(xv, c, xv, 0);
                    continue;
                };
                let allowed = (0..ua.slot_len(t))
                    .filter(|&d| w.of(ua.rep(t, d)) == xc)
                    .fold(0u128, |acc, d| acc | 1u128 << d);
                csp.imply(xv, c, psi.id(t, j), allowed);
            }
        }
    }
}

/// Decides whether `a` and `b` are ε-interleaved, with truncation slope `m`
/// (zero for the plain smoothing).
pub fn check_interleaving(
    a: &ReebGraph,
    b: &ReebGraph,
    eps: Value,
    m: Value,
    budget: u64,
) -> Result<Decision, InterleaveError> {
    let setup = Setup::new(a, b, eps, m, interleaving_grid(a, b, eps, m))?;
    let Setup { sa, sb, ua, ub, .. } = &setup;
    if too_wide(ua) || too_wide(ub) {
        return Ok(Decision::Unknown);
    }
    let (phi, n1) = Vars::new(sa, 0);
    let (psi, n2) = Vars::new(sb, n1);
    let mut dom = vec![0u128; n2];
    for s in sa.slots() {
        for k in 0..sa.slot_len(s) {
            dom[phi.id(s, k)] = mask_bits(setup.mask_b.as_ref(), ub, s);
        }
    }
    for s in sb.slots() {
        for k in 0..sb.slot_len(s) {
            dom[psi.id(s, k)] = mask_bits(setup.mask_a.as_ref(), ua, s);
        }
    }
    let mut csp = Csp::new(dom);
    continuity(&mut csp, sa, ub, &phi);
    continuity(&mut csp, sb, ua, &psi);
    composite(&mut csp, a, b, sa, sb, ua, ub, &phi, &psi, eps);
    composite(&mut csp, b, a, sb, sa, ub, ua, &psi, &phi, eps);
    let mut found = None;
    let mut budget = budget;
    let complete = csp.solve(&mut budget, &mut |sol| {
        found = Some((extract(sol, sa, &phi), extract(sol, sb, &psi)));
        false
    });
    Ok(match found {
        Some((phi, psi)) => Decision::Interleaved(InterleavingCertificate {
            eps,
            m,
            grid: setup.grid.clone(),
            phi,
            psi,
        }),
        None if complete => Decision::NotInterleaved,
        None => Decision::Unknown,
    })
}

/// Independent check of a certificate: both maps continuous and
/// function-preserving into the (truncated) smoothings, and both composites
/// equal to the 2ε maps at every pair of grid points, not just the
/// representatives the search used.
pub fn verify_certificate(a: &ReebGraph, b: &ReebGraph, cert: &InterleavingCertificate) -> Result<(), VerifyError> {
    let setup = Setup::new(a, b, cert.eps, cert.m, cert.grid.clone()).map_err(|e| match e {
        InterleaveError::Level(l) => VerifyError::Level(l),
        _ => VerifyError::Map(MapError::GridMismatch),
    })?;
    let Setup { sa, sb, ua, ub, eps, .. } = &setup;
    cert.phi.validate(sa, ub).map_err(VerifyError::Map)?;
    cert.psi.validate(sb, ua).map_err(VerifyError::Map)?;
    for (map, src, mask) in [(&cert.phi, sa, &setup.mask_b), (&cert.psi, sb, &setup.mask_a)] {
        if let Some(mask) = mask {
            for s in src.slots() {
                for k in 0..src.slot_len(s) {
                    let img = map.image(s, k);
                    let kept = match s {
                        Slot::Level(i) => mask.0[i][img],
                        Slot::Slab(i) => mask.1[i][img],
                    };
                    if !kept {
                        return Err(VerifyError::Truncated(s, k));
                    }
                }
            }
        }
    }
    let dirs = [(true, a, b, sa, sb, ua, ub, &cert.phi, &cert.psi), (false, b, a, sb, sa, ub, ua, &cert.psi, &cert.phi)];
    for (forward, a, b, sa, sb, ua, ub, phi, psi) in dirs {
        let wb = slot_windows(b, ub, *eps);
        for s in sa.slots() {
            let h = sa.height(s);
            let w = window_components(a, h - *eps * int(2), h + *eps * int(2));
            for k in 0..sa.slot_len(s) {
                let xc = w.of(sa.rep(s, k));
                for (t, j) in inner_elements(sb, ub, &wb, s, phi.image(s, k)) {
                    if w.of(ua.rep(t, psi.image(t, j))) != xc {
                        return Err(VerifyError::Composite { forward, slot: s, index: k });
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleavingResult {
    pub bracket: Bracket,
    /// The optimum is a candidate value, confirmed by a failing probe just
    /// below it.
    pub exact: bool,
    /// False when a decision ran out of budget.
    pub complete: bool,
    pub certificate: Option<InterleavingCertificate>,
    pub decisions: usize,
}

/// Candidate optima: differences of critical values divided by small
/// denominators. Truncated interleavings also need denominators `k ± j·m`.
pub fn candidates(a: &ReebGraph, b: &ReebGraph, m: Value) -> Vec<Value> {
    let crit = merge_grid(a.critical_values().into_iter().chain(b.critical_values()));
    let mut dens = Vec::new();
    for k in 1..=4i128 {
        for j in -2..=2i128 {
            if j != 0 && m == Value::default() {
                continue;
            }
            let d = int(k) + int(j) * m;
            if d > Value::default() {
                dens.push(d);
            }
        }
    }
    let mut out = vec![Value::default()];
    for (i, &x) in crit.iter().enumerate() {
        for &y in &crit[i + 1..] {
            for &d in &dens {
                out.push((y - x) / d);
            }
        }
    }
    merge_grid(out)
}

pub fn interleaving_distance(a: &ReebGraph, b: &ReebGraph, tol: Value, budget: u64) -> Result<InterleavingResult, InterleaveError> {
    truncated_interleaving_distance(a, b, Value::default(), tol, budget)
}

/// `d_I^m` by bisection over [`candidates`]. A bracket `[lo, hi]` always
/// has `lo` proven infeasible (or zero) and `hi` carrying a certificate.
pub fn truncated_interleaving_distance(
    a: &ReebGraph,
    b: &ReebGraph,
    m: Value,
    tol: Value,
    budget: u64,
) -> Result<InterleavingResult, InterleaveError> {
    if m < Value::default() || m >= int(1) {
        return Err(InterleaveError::TruncationOutOfRange);
    }
    if a.component_count() != b.component_count() {
        return Ok(InterleavingResult {
            bracket: Bracket::infinite(),
            exact: true,
            complete: true,
            certificate: None,
            decisions: 0,
        });
    }
    let cands = candidates(a, b, m);
    let mut decisions = 0;
    let mut decide = |eps: Value| -> Result<Decision, InterleaveError> {
        decisions += 1;
        check_interleaving(a, b, eps, m, budget)
    };
    let partial = |lo: Value, hi: Option<(Value, InterleavingCertificate)>, decisions| InterleavingResult {
        bracket: Bracket { lo: Ext::Finite(lo), hi: hi.as_ref().map_or(Ext::Infinite, |h| Ext::Finite(h.0)) },
        exact: false,
        complete: false,
        certificate: hi.map(|h| h.1),
        decisions,
    };
    // Invariant: cands[lo_i] infeasible, cands[hi.0] feasible.
    let top = cands.len() - 1;
    let mut hi: (usize, InterleavingCertificate) = match decide(cands[top])? {
        Decision::Interleaved(c) => (top, c),
        Decision::NotInterleaved => {
            // Unreachable for equal component counts; report the proven bound.
            return Ok(InterleavingResult {
                bracket: Bracket { lo: Ext::Finite(cands[top]), hi: Ext::Infinite },
                exact: false,
                complete: true,
                certificate: None,
                decisions,
            });
        }
        Decision::Unknown => return Ok(partial(Value::default(), None, decisions)),
    };
    match decide(cands[0])? {
        Decision::Interleaved(c) => {
            return Ok(InterleavingResult { bracket: Bracket::exact(cands[0]), exact: true, complete: true, certificate: Some(c), decisions });
        }
        Decision::Unknown => return Ok(partial(cands[0], Some((cands[hi.0], hi.1)), decisions)),
        Decision::NotInterleaved => {}
    }
    let mut lo_i = 0;
    while hi.0 - lo_i > 1 {
        let mid = (lo_i + hi.0) / 2;
        match decide(cands[mid])? {
            Decision::Interleaved(c) => hi = (mid, c),
            Decision::NotInterleaved => lo_i = mid,
            Decision::Unknown => {
                return Ok(partial(cands[lo_i], Some((cands[hi.0], hi.1)), decisions));
            }
        }
    }
    let lo_v = cands[lo_i];
    let (hi_v, cert) = (cands[hi.0], hi.1);
    let probe = hi_v - tol;
    if probe <= lo_v {
        return Ok(InterleavingResult { bracket: Bracket::exact(hi_v), exact: true, complete: true, certificate: Some(cert), decisions });
    }
    match decide(probe)? {
        Decision::NotInterleaved => {
            Ok(InterleavingResult { bracket: Bracket::exact(hi_v), exact: true, complete: true, certificate: Some(cert), decisions })
        }
        Decision::Unknown => Ok(partial(lo_v, Some((hi_v, cert)), decisions)),
        Decision::Interleaved(c) => {
            // The optimum is not a candidate; bisect the open gap.
            let (mut lo, mut hi) = (lo_v, (probe, c));
            while hi.0 - lo > tol {
                let mid = (lo + hi.0) / int(2);
                match decide(mid)? {
                    Decision::Interleaved(c) => hi = (mid, c),
                    Decision::NotInterleaved => lo = mid,
                    Decision::Unknown => return Ok(partial(lo, Some(hi), decisions)),
                }
            }
            Ok(InterleavingResult {
                bracket: Bracket { lo: Ext::Finite(lo), hi: Ext::Finite(hi.0) },
                exact: false,
                complete: true,
                certificate: Some(hi.1),
                decisions,
            })
        }
    }
}

/// Default probe tolerance.
pub fn default_tol() -> Value {
    frac(1, 1_000_000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example1, example2, example3, torus_graph};
    use crate::graph::Graph;
    use crate::value::half;

    fn edge(lo: i128, hi: i128) -> ReebGraph {
        Graph::from_parts(vec![int(lo), int(hi)], &[(0, 1)]).unwrap()
    }

    fn check(a: &ReebGraph, b: &ReebGraph, eps: Value) -> bool {
        match check_interleaving(a, b, eps, int(0), DEFAULT_BUDGET).unwrap() {
            Decision::Interleaved(c) => {
                verify_certificate(a, b, &c).unwrap();
                true
            }
            Decision::NotInterleaved => false,
            Decision::Unknown => panic!("budget"),
        }
    }

    #[test]
    fn enumerate_counts() {
        let e = edge(0, 1);
        let grid = vec![int(0), int(1)];
        assert_eq!(enumerate_maps(&e, &e, &grid, 10, 1000).unwrap().unwrap().len(), 1);
        let two = Graph::from_parts(vec![int(0), int(1)], &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(enumerate_maps(&e, &two, &grid, 10, 1000).unwrap().unwrap().len(), 2);
    }

    #[test]
    fn self_interleaved_at_zero() {
        let g = crate::fixtures::fig4();
        assert!(check(&g, &g, int(0)));
    }

    #[test]
    fn shifted_edges() {
        let (a, b) = (edge(0, 4), edge(1, 5));
        assert!(check(&a, &b, int(1)));
        assert!(!check(&a, &b, frac(999, 1000)));
        let r = interleaving_distance(&a, &b, default_tol(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.bracket, Bracket::exact(int(1)));
        assert!(r.exact);
    }

    #[test]
    fn loop_against_edge_needs_quarter_height() {
        // Killing a loop of height 2 takes 2ε >= 1 on the loop side, and
        // the edge side then has to absorb the shift: d_I = 1/2.
        let t = torus_graph();
        let (lo, hi) = t.value_range().unwrap();
        let e = Graph::from_parts(vec![lo, hi], &[(0, 1)]).unwrap();
        let r = interleaving_distance(&t, &e, default_tol(), DEFAULT_BUDGET).unwrap();
        assert!(r.exact);
        verify_certificate(&t, &e, r.certificate.as_ref().unwrap()).unwrap();
        let loop_h = t.values[2] - t.values[1];
        assert_eq!(r.bracket, Bracket::exact(loop_h / int(4)));
    }

    #[test]
    fn example1_value() {
        let (f, g) = example1();
        let want = half(int(4) - int(3));
        assert!(check(&f, &g, want));
        assert!(!check(&f, &g, want - frac(1, 1_000_000)));
    }

    #[test]
    fn example2_and_3() {
        let (f, g) = example2();
        let r = interleaving_distance(&f, &g, default_tol(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.bracket, Bracket::exact(frac(2, 5)));
        let (f, g) = example3();
        let r = interleaving_distance(&f, &g, default_tol(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.bracket, Bracket::exact(int(1)));
    }

    #[test]
    fn different_component_counts_are_infinite() {
        let a = edge(0, 1);
        let b = a.disjoint_union(&a);
        let r = interleaving_distance(&a, &b, default_tol(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.bracket, Bracket::infinite());
    }

    #[test]
    fn example1_distance_and_truncated() {
        let (f, g) = example1();
        let r = interleaving_distance(&f, &g, default_tol(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.bracket, Bracket::exact(frac(1, 2)));
        let r0 = truncated_interleaving_distance(&f, &g, int(0), default_tol(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r0.bracket, r.bracket);
    }

    #[test]
    fn example4_truncated() {
        let (f, g) = crate::fixtures::example4();
        let r = interleaving_distance(&f, &g, default_tol(), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.bracket, Bracket::exact(int(1)));
        for m in [frac(1, 4), frac(1, 2)] {
            let r = truncated_interleaving_distance(&f, &g, m, default_tol(), DEFAULT_BUDGET).unwrap();
            assert_eq!(r.bracket, Bracket::exact(int(1) / (int(1) - m)), "m = {}", m);
            verify_certificate(&f, &g, r.certificate.as_ref().unwrap()).unwrap();
        }
    }
}
