//! Backtracking over unknown operation tables.
//!
//! Every enumerator in the crate (models, homomorphisms, internal structures,
//! category structures on reflexive graphs) is an instance of one problem:
//! fill the cells of some unknown tables with elements so that
//!
//! * each unknown is a homomorphism from a power of an ambient algebra
//!   (optional), and
//! * a list of equations over the unknowns holds for every instance.
//!
//! Cells are decided in index order with ascending values. Propagation only
//! ever assigns values that are forced by the cells already fixed, so the
//! solutions come out in lexicographic order of the cell vector.
//!
//! Homomorphism constraints are propagated by closure: once the cells
//! `t_1..t_r` of an unknown are all fixed, the cell `ω(t_1..t_r)` is forced to
//! `ω(φ(t_1)..φ(t_r))`. Each such combination is visited exactly once per
//! branch, at the moment its latest cell is processed. Equation instances are
//! re-evaluated when a cell they are blocked on becomes fixed; an instance
//! whose one side is known and whose other side is a single open cell forces
//! that cell.

use crate::algebra::FiniteAlgebra;

const NONE: u32 = u32::MAX;

/// An unknown table of the given arity over the domain carrier.
pub(crate) struct Unknown {
    pub arity: usize,
    /// Codes (row-major over the domain carrier) that carry a cell, ascending.
    /// `None` means every code. A restricted support must be closed under the
    /// ambient operations when homomorphism constraints are on.
    pub support: Option<Vec<usize>>,
}

impl Unknown {
    pub fn full(arity: usize) -> Self {
        Self { arity, support: None }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum UTerm {
    Var(usize),
    Unknown(usize, Vec<UTerm>),
}

pub(crate) enum Instances {
    /// Every assignment of values to the variables.
    All,
    /// Only these assignments.
    Explicit(Vec<Vec<usize>>),
}

pub(crate) struct UEquation {
    pub nvars: usize,
    pub lhs: UTerm,
    pub rhs: UTerm,
    pub instances: Instances,
}

pub(crate) struct Problem<'a> {
    /// Algebra whose powers index the cells.
    pub dom: &'a FiniteAlgebra,
    /// Algebra the cell values live in. Must share `dom`'s signature when
    /// `hom` is set, and equal `dom`'s size when there are equations.
    pub val: &'a FiniteAlgebra,
    pub hom: bool,
    pub unknowns: Vec<Unknown>,
    pub equations: Vec<UEquation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Outcome {
    pub nodes: u64,
    pub truncated: bool,
}

struct Conflict;

enum Ev {
    Val(usize),
    Need { cell: u32, outer: bool },
    Undefined,
}

struct AmbientOp<'a> {
    arity: usize,
    dom: &'a [usize],
    val: &'a [usize],
}

struct Frame {
    cell: usize,
    next: usize,
    trail_len: usize,
    log_len: usize,
}

pub(crate) struct Search<'a> {
    p: Problem<'a>,
    n_dom: usize,
    n_val: usize,
    offsets: Vec<usize>,
    cell_unknown: Vec<u32>,
    /// Per unknown: flattened components of each cell's code, `arity` per cell.
    comps: Vec<Vec<u32>>,
    code_to_cell: Vec<Vec<u32>>,
    allowed: Vec<Option<Vec<usize>>>,
    ambient: Vec<AmbientOp<'a>>,
    nullary: Vec<(usize, usize)>,
    inst_offsets: Vec<usize>,

    value: Vec<u32>,
    trail: Vec<u32>,
    utrail: Vec<Vec<u32>>,
    upos: Vec<u32>,
    processed: usize,
    watches: Vec<Vec<u32>>,
    watch_log: Vec<u32>,
    env: Vec<usize>,
}

fn pow(n: usize, k: usize) -> usize {
    crate::specs::checked_pow(n, k).expect("table size overflow")
}

impl<'a> Search<'a> {
    pub fn new(p: Problem<'a>) -> Self {
        let n_dom = p.dom.size();
        let n_val = p.val.size();
        assert!(
            p.equations.is_empty() || n_dom == n_val,
            "equations need a common carrier"
        );
        let mut offsets = Vec::with_capacity(p.unknowns.len() + 1);
        let mut cell_unknown = Vec::new();
        let mut comps = Vec::new();
        let mut code_to_cell = Vec::new();
        let mut total = 0usize;
        for (u, unk) in p.unknowns.iter().enumerate() {
            offsets.push(total);
            let space = pow(n_dom, unk.arity);
            let codes: Vec<usize> = match &unk.support {
                Some(s) => s.clone(),
                None => (0..space).collect(),
            };
            let mut lookup = vec![NONE; space];
            let mut c = Vec::with_capacity(codes.len() * unk.arity);
            for (rank, &code) in codes.iter().enumerate() {
                lookup[code] = (total + rank) as u32;
                let start = c.len();
                let mut rest = code;
                c.resize(start + unk.arity, 0);
                for q in (0..unk.arity).rev() {
                    c[start + q] = (rest % n_dom.max(1)) as u32;
                    rest /= n_dom.max(1);
                }
                cell_unknown.push(u as u32);
            }
            total += codes.len();
            comps.push(c);
            code_to_cell.push(lookup);
        }
        offsets.push(total);

        let mut ambient = Vec::new();
        let mut nullary = Vec::new();
        if p.hom {
            assert_eq!(
                p.dom.signature().ops().len(),
                p.val.signature().ops().len(),
                "homomorphism constraints need matching signatures"
            );
            for (i, op) in p.dom.signature().ops().iter().enumerate() {
                let pd = p.dom.projection_index(i);
                if pd.is_some() && pd == p.val.projection_index(i) {
                    continue;
                }
                ambient.push(AmbientOp {
                    arity: op.arity,
                    dom: p.dom.table(i),
                    val: p.val.table(i),
                });
            }
            for (&cd, &cv) in p.dom.constants().iter().zip(p.val.constants()) {
                nullary.push((cd, cv));
            }
        }

        let mut inst_offsets = vec![0];
        for eq in &p.equations {
            let count = match &eq.instances {
                Instances::All => pow(n_val, eq.nvars),
                Instances::Explicit(list) => list.len(),
            };
            let last = *inst_offsets.last().unwrap();
            inst_offsets.push(last + count);
        }
        assert!(
            *inst_offsets.last().unwrap() < NONE as usize,
            "too many equation instances"
        );
        let max_vars = p.equations.iter().map(|e| e.nvars).max().unwrap_or(0);
        let nunk = p.unknowns.len();
        Self {
            n_dom,
            n_val,
            offsets,
            cell_unknown,
            comps,
            code_to_cell,
            allowed: vec![None; total],
            ambient,
            nullary,
            inst_offsets,
            value: vec![NONE; total],
            trail: Vec::with_capacity(total),
            utrail: vec![Vec::new(); nunk],
            upos: vec![0; total],
            processed: 0,
            watches: vec![Vec::new(); total],
            watch_log: Vec::new(),
            env: vec![0; max_vars],
            p,
        }
    }

    pub fn num_cells(&self) -> usize {
        self.value.len()
    }

    pub fn cell_of(&self, unknown: usize, code: usize) -> Option<usize> {
        match self.code_to_cell[unknown].get(code) {
            Some(&c) if c != NONE => Some(c as usize),
            _ => None,
        }
    }

    /// Restricts the values a cell may take. Intersects with any earlier restriction.
    pub fn restrict(&mut self, cell: usize, mut values: Vec<usize>) {
        values.sort_unstable();
        values.dedup();
        values.retain(|&v| v < self.n_val);
        let merged = match self.allowed[cell].take() {
            None => values,
            Some(old) => old.into_iter().filter(|v| values.binary_search(v).is_ok()).collect(),
        };
        self.allowed[cell] = Some(merged);
    }

    fn allows(&self, cell: usize, v: usize) -> bool {
        match &self.allowed[cell] {
            None => v < self.n_val,
            Some(list) => list.binary_search(&v).is_ok(),
        }
    }

    fn assign(&mut self, cell: u32, v: usize) -> Result<(), Conflict> {
        let c = cell as usize;
        let cur = self.value[c];
        if cur != NONE {
            return if cur as usize == v { Ok(()) } else { Err(Conflict) };
        }
        if !self.allows(c, v) {
            return Err(Conflict);
        }
        self.value[c] = v as u32;
        self.trail.push(cell);
        let u = self.cell_unknown[c] as usize;
        self.upos[c] = self.utrail[u].len() as u32;
        self.utrail[u].push(cell);
        Ok(())
    }

    fn undo(&mut self, trail_len: usize, log_len: usize) {
        while self.trail.len() > trail_len {
            let c = self.trail.pop().unwrap() as usize;
            self.value[c] = NONE;
            self.utrail[self.cell_unknown[c] as usize].pop();
        }
        while self.watch_log.len() > log_len {
            let c = self.watch_log.pop().unwrap() as usize;
            self.watches[c].pop();
        }
        self.processed = self.processed.min(trail_len);
    }

    fn load_env(&mut self, id: usize) -> usize {
        let eq_idx = self.inst_offsets.partition_point(|&o| o <= id) - 1;
        let local = id - self.inst_offsets[eq_idx];
        let eq = &self.p.equations[eq_idx];
        match &eq.instances {
            Instances::All => {
                let mut rest = local;
                for q in (0..eq.nvars).rev() {
                    self.env[q] = rest % self.n_val;
                    rest /= self.n_val;
                }
            }
            Instances::Explicit(list) => self.env[..eq.nvars].copy_from_slice(&list[local]),
        }
        eq_idx
    }

    fn eval(&self, t: &UTerm) -> Ev {
        match t {
            UTerm::Var(i) => Ev::Val(self.env[*i]),
            UTerm::Unknown(u, args) => {
                let mut code = 0usize;
                for a in args {
                    match self.eval(a) {
                        Ev::Val(v) => code = code * self.n_dom + v,
                        Ev::Need { cell, .. } => return Ev::Need { cell, outer: false },
                        Ev::Undefined => return Ev::Undefined,
                    }
                }
                match self.code_to_cell[*u].get(code) {
                    Some(&cell) if cell != NONE => {
                        let v = self.value[cell as usize];
                        if v == NONE {
                            Ev::Need { cell, outer: true }
                        } else {
                            Ev::Val(v as usize)
                        }
                    }
                    _ => Ev::Undefined,
                }
            }
        }
    }

    fn check_instance(&mut self, id: usize) -> Result<(), Conflict> {
        let eq_idx = self.load_env(id);
        let eq = &self.p.equations[eq_idx];
        let l = self.eval(&eq.lhs);
        let r = self.eval(&eq.rhs);
        let watch = match (l, r) {
            (Ev::Val(a), Ev::Val(b)) => return if a == b { Ok(()) } else { Err(Conflict) },
            (Ev::Undefined, _) | (_, Ev::Undefined) => return Err(Conflict),
            (Ev::Need { cell, outer: true }, Ev::Val(v)) | (Ev::Val(v), Ev::Need { cell, outer: true }) => {
                return self.assign(cell, v)
            }
            (Ev::Need { cell, .. }, Ev::Val(_)) | (Ev::Val(_), Ev::Need { cell, .. }) => cell,
            (Ev::Need { cell: c, outer: oc }, Ev::Need { cell: d, .. }) => {
                if oc {
                    d
                } else {
                    c
                }
            }
        };
        self.watches[watch as usize].push(id as u32);
        self.watch_log.push(watch);
        Ok(())
    }

    /// Homomorphism closure for the combinations whose latest cell is `cell`.
    fn hom_step(&mut self, cell: usize) -> Result<(), Conflict> {
        let u = self.cell_unknown[cell] as usize;
        let k = self.p.unknowns[u].arity;
        let i = self.upos[cell] as usize;
        let mut forced: Vec<(u32, usize)> = Vec::new();
        let trail = &self.utrail[u];
        let comps = &self.comps[u];
        let base = self.offsets[u];
        let comp = |c: u32, q: usize| comps[(c as usize - base) * k + q] as usize;
        let mut idx = vec![0usize; 8];
        let mut args = vec![0usize; 8];
        for op in &self.ambient {
            let r = op.arity;
            if idx.len() < r {
                idx.resize(r, 0);
                args.resize(r, 0);
            }
            // position j holds the first occurrence of `cell`
            for j in 0..r {
                let limit = |pos: usize| if pos < j { i } else { i + 1 };
                if (0..r).any(|pos| pos != j && limit(pos) == 0) {
                    continue;
                }
                for pos in 0..r {
                    idx[pos] = 0;
                }
                idx[j] = i;
                'combos: loop {
                    let mut code = 0usize;
                    for q in 0..k {
                        let mut acode = 0usize;
                        for pos in 0..r {
                            acode = acode * self.n_dom + comp(trail[idx[pos]], q);
                        }
                        code = code * self.n_dom + op.dom[acode];
                    }
                    let mut vcode = 0usize;
                    for pos in 0..r {
                        vcode = vcode * self.n_val + self.value[trail[idx[pos]] as usize] as usize;
                    }
                    let target = self.code_to_cell[u][code];
                    if target != NONE {
                        let want = op.val[vcode];
                        let have = self.value[target as usize];
                        if have == NONE {
                            forced.push((target, want));
                        } else if have as usize != want {
                            return Err(Conflict);
                        }
                    }
                    // advance the odometer, skipping position j
                    let mut pos = r;
                    loop {
                        if pos == 0 {
                            break 'combos;
                        }
                        pos -= 1;
                        if pos == j {
                            continue;
                        }
                        idx[pos] += 1;
                        if idx[pos] < limit(pos) {
                            break;
                        }
                        idx[pos] = 0;
                    }
                }
            }
        }
        for (c, v) in forced {
            self.assign(c, v)?;
        }
        Ok(())
    }

    fn propagate(&mut self) -> Result<(), Conflict> {
        while self.processed < self.trail.len() {
            let cell = self.trail[self.processed] as usize;
            self.processed += 1;
            if !self.ambient.is_empty() {
                self.hom_step(cell)?;
            }
            let len = self.watches[cell].len();
            for w in 0..len {
                let id = self.watches[cell][w] as usize;
                self.check_instance(id)?;
            }
        }
        Ok(())
    }

    fn root(&mut self) -> Result<(), Conflict> {
        for c in 0..self.num_cells() {
            let single = match &self.allowed[c] {
                Some(list) if list.is_empty() => return Err(Conflict),
                Some(list) if list.len() == 1 => Some(list[0]),
                _ => None,
            };
            if let Some(v) = single {
                self.assign(c as u32, v)?;
            }
        }
        if self.p.hom {
            for u in 0..self.p.unknowns.len() {
                let k = self.p.unknowns[u].arity;
                for &(cd, cv) in &self.nullary.clone() {
                    let code = (0..k).fold(0, |acc, _| acc * self.n_dom + cd);
                    if let Some(cell) = self.cell_of(u, code) {
                        self.assign(cell as u32, cv)?;
                    }
                }
            }
        }
        let total = *self.inst_offsets.last().unwrap();
        for id in 0..total {
            self.check_instance(id)?;
        }
        self.propagate()
    }

    /// Enumerates solutions in lexicographic order of the cell vector. `sink`
    /// returns `false` to stop early. `budget` bounds the number of decisions.
    pub fn run(&mut self, budget: u64, mut sink: impl FnMut(&[usize]) -> bool) -> Outcome {
        let mut out = Outcome {
            nodes: 0,
            truncated: false,
        };
        if self.root().is_err() {
            return out;
        }
        let n = self.num_cells();
        let mut stack: Vec<Frame> = Vec::new();
        let mut scratch = vec![0usize; n];
        let mut descend = true;
        loop {
            if descend {
                let start = stack.last().map_or(0, |f| f.cell + 1);
                match (start..n).find(|&c| self.value[c] == NONE) {
                    None => {
                        for (s, &v) in scratch.iter_mut().zip(&self.value) {
                            *s = v as usize;
                        }
                        if !sink(&scratch) {
                            return out;
                        }
                    }
                    Some(cell) => stack.push(Frame {
                        cell,
                        next: 0,
                        trail_len: self.trail.len(),
                        log_len: self.watch_log.len(),
                    }),
                }
            }
            let Some(top) = stack.last_mut() else {
                return out;
            };
            let (cell, trail_len, log_len) = (top.cell, top.trail_len, top.log_len);
            let choice = match &self.allowed[cell] {
                None => (top.next < self.n_val).then_some(top.next),
                Some(list) => list.get(top.next).copied(),
            };
            top.next += 1;
            self.undo(trail_len, log_len);
            let Some(v) = choice else {
                stack.pop();
                descend = false;
                continue;
            };
            out.nodes += 1;
            if out.nodes > budget {
                out.truncated = true;
                return out;
            }
            descend = self.assign(cell as u32, v).is_ok() && self.propagate().is_ok();
        }
    }
}
