//! Homomorphism search between finite algebras as backtracking constraint
//! satisfaction, and the point-separation test for membership in SP(Y).

use crate::algcore::{decode_tuple, tuple_index, FiniteAlgebra};
use crate::error::{Error, Result};

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of value trials before the search gives up.
    pub max_nodes: u64,
    /// Stop after this many solutions; `None` collects all of them.
    pub max_solutions: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 50_000_000,
            max_solutions: None,
        }
    }
}

impl SearchBudget {
    pub fn first_only(self) -> Self {
        SearchBudget {
            max_solutions: Some(1),
            ..self
        }
    }
}

/// A partial assignment from a source carrier to a target carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMap {
    assignment: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn empty(source_size: usize) -> Self {
        PartialMap {
            assignment: vec![None; source_size],
        }
    }

    pub fn from_pairs(source_size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = PartialMap::empty(source_size);
        for &(x, y) in pairs {
            m.set(x, y)?;
        }
        Ok(m)
    }

    /// Assigns `x ↦ y`; reassigning to a different value is an error.
    pub fn set(&mut self, x: usize, y: usize) -> Result<()> {
        let size = self.assignment.len();
        let slot = self
            .assignment
            .get_mut(x)
            .ok_or(Error::ElementOutOfRange { element: x, size })?;
        match slot {
            Some(old) if *old != y => Err(Error::InvalidArgument(format!(
                "element {} already mapped to {}, not {}",
                x, old, y
            ))),
            _ => {
                *slot = Some(y);
                Ok(())
            }
        }
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.assignment.get(x).copied().flatten()
    }

    pub fn source_size(&self) -> usize {
        self.assignment.len()
    }

    pub fn assigned(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(x, y)| y.map(|y| (x, y)))
    }
}

/// Constraint `map(f_A(args)) = f_B(map(args))` for one op and one tuple.
#[derive(Clone, Copy)]
struct Constraint {
    op: u32,
    tuple: u32,
}

struct Solver<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    injective: bool,
    occurrences: Vec<Vec<Constraint>>,
    assign: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
    nodes: u64,
    budget: SearchBudget,
    solutions: Vec<Vec<usize>>,
    args: Vec<usize>,
    img: Vec<usize>,
}

enum Flow {
    Continue,
    Stop,
}

impl<'a> Solver<'a> {
    fn new(
        a: &'a FiniteAlgebra,
        b: &'a FiniteAlgebra,
        injective: bool,
        budget: SearchBudget,
    ) -> Result<Self> {
        if a.signature() != b.signature() {
            return Err(Error::SignatureMismatch);
        }
        let n = a.size();
        let mut occurrences = vec![Vec::new(); n];
        let mut args = Vec::new();
        for (op, sym) in a.signature().ops().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            args.resize(sym.arity, 0);
            for t in 0..a.table(op).len() {
                decode_tuple(n, t, &mut args);
                let c = Constraint {
                    op: op as u32,
                    tuple: t as u32,
                };
                args.sort_unstable();
                args.dedup();
                for &x in &args {
                    occurrences[x].push(c);
                }
                args.resize(sym.arity, 0);
            }
        }
        Ok(Solver {
            a,
            b,
            injective,
            occurrences,
            assign: vec![UNSET; n],
            used: vec![false; b.size()],
            trail: Vec::new(),
            nodes: 0,
            budget,
            solutions: Vec::new(),
            args: Vec::new(),
            img: Vec::new(),
        })
    }

    /// Records `x ↦ v` without propagation; false on an immediate conflict.
    fn set(&mut self, x: usize, v: usize) -> bool {
        if self.assign[x] != UNSET {
            return self.assign[x] == v;
        }
        if self.injective && self.used[v] {
            return false;
        }
        self.assign[x] = v;
        self.used[v] = true;
        self.trail.push(x);
        true
    }

    /// Propagates forced values from trail position `head` onwards.
    fn propagate(&mut self, mut head: usize) -> bool {
        let n = self.a.size();
        let m = self.b.size();
        while head < self.trail.len() {
            let x = self.trail[head];
            head += 1;
            for k in 0..self.occurrences[x].len() {
                let c = self.occurrences[x][k];
                let op = c.op as usize;
                let arity = self.a.signature().arity(op);
                self.args.resize(arity, 0);
                decode_tuple(n, c.tuple as usize, &mut self.args);
                self.img.clear();
                let mut complete = true;
                for &y in &self.args {
                    let v = self.assign[y];
                    if v == UNSET {
                        complete = false;
                        break;
                    }
                    self.img.push(v);
                }
                if !complete {
                    continue;
                }
                let want = self.b.table(op)[tuple_index(m, &self.img)];
                let r = self.a.table(op)[c.tuple as usize];
                if !self.set(r, want) {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let x = self.trail.pop().unwrap();
            self.used[self.assign[x]] = false;
            self.assign[x] = UNSET;
        }
    }

    fn start(&mut self, seed: &PartialMap) -> Result<bool> {
        if seed.source_size() != self.a.size() {
            return Err(Error::InvalidArgument(format!(
                "seed covers {} elements, source has {}",
                seed.source_size(),
                self.a.size()
            )));
        }
        for (x, y) in seed.assigned() {
            if y >= self.b.size() {
                return Err(Error::ElementOutOfRange {
                    element: y,
                    size: self.b.size(),
                });
            }
            if !self.set(x, y) {
                return Ok(false);
            }
        }
        for (op, sym) in self.a.signature().ops().iter().enumerate() {
            if sym.arity == 0 && !self.set(self.a.table(op)[0], self.b.table(op)[0]) {
                return Ok(false);
            }
        }
        Ok(self.propagate(0))
    }

    fn search(&mut self, from: usize) -> Result<Flow> {
        let Some(x) = (from..self.a.size()).find(|&x| self.assign[x] == UNSET) else {
            self.solutions.push(self.assign.clone());
            if Some(self.solutions.len()) == self.budget.max_solutions {
                return Ok(Flow::Stop);
            }
            return Ok(Flow::Continue);
        };
        for v in 0..self.b.size() {
            if self.injective && self.used[v] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes {
                return Err(Error::BudgetExhausted("homomorphism search"));
            }
            let mark = self.trail.len();
            let ok = self.set(x, v) && self.propagate(mark);
            if ok {
                if let Flow::Stop = self.search(x + 1)? {
                    self.undo(mark);
                    return Ok(Flow::Stop);
                }
            }
            self.undo(mark);
        }
        Ok(Flow::Continue)
    }
}

fn run(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    seed: &PartialMap,
    budget: SearchBudget,
    injective: bool,
) -> Result<Vec<Vec<usize>>> {
    let mut solver = Solver::new(a, b, injective, budget)?;
    if solver.start(seed)? {
        solver.search(0)?;
    }
    Ok(solver.solutions)
}

/// All homomorphisms `a → b` extending `seed`, in the order of the search:
/// variables are the least-index unassigned source elements and values are
/// tried in ascending order.
pub fn find_homomorphisms(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    seed: &PartialMap,
    budget: SearchBudget,
) -> Result<Vec<Vec<usize>>> {
    run(a, b, seed, budget, false)
}

/// Like [`find_homomorphisms`] restricted to injective maps.
pub fn find_embeddings(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    seed: &PartialMap,
    budget: SearchBudget,
) -> Result<Vec<Vec<usize>>> {
    run(a, b, seed, budget, true)
}

/// The first homomorphism extending `seed`, if any.
pub fn first_homomorphism(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    seed: &PartialMap,
    budget: SearchBudget,
) -> Result<Option<Vec<usize>>> {
    Ok(run(a, b, seed, budget.first_only(), false)?.pop())
}

pub fn first_embedding(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    budget: SearchBudget,
) -> Result<Option<Vec<usize>>> {
    let seed = PartialMap::empty(a.size());
    Ok(run(a, b, &seed, budget.first_only(), true)?.pop())
}

pub fn exists_embedding(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<bool> {
    Ok(first_embedding(a, b, SearchBudget::default())?.is_some())
}

/// An isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Vec<usize>>> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch);
    }
    if a.size() != b.size() {
        return Ok(None);
    }
    first_embedding(a, b, SearchBudget::default())
}

pub fn are_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<bool> {
    Ok(find_isomorphism(a, b)?.is_some())
}

/// A homomorphism into generator `generator` of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingHom {
    pub generator: usize,
    pub map: Vec<usize>,
}

/// Outcome of the point-separation test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    /// Homomorphisms into members of the family that jointly separate all
    /// points; the induced map into their product is injective.
    Separated(Vec<SeparatingHom>),
    /// A pair that no homomorphism into any member can separate.
    Unseparated(usize, usize),
}

impl Separation {
    pub fn is_separated(&self) -> bool {
        matches!(self, Separation::Separated(_))
    }
}

/// Searches for homomorphisms into members of `ys` separating every pair of
/// distinct elements of `a`.
pub fn separate_points(
    a: &FiniteAlgebra,
    ys: &[&FiniteAlgebra],
    budget: SearchBudget,
) -> Result<Separation> {
    for y in ys {
        if y.signature() != a.signature() {
            return Err(Error::SignatureMismatch);
        }
    }
    let n = a.size();
    let mut separated = vec![false; n * n];
    let mut homs: Vec<SeparatingHom> = Vec::new();
    for x in 0..n {
        for z in x + 1..n {
            if separated[x * n + z] {
                continue;
            }
            let mut found = None;
            'gens: for (j, y) in ys.iter().enumerate() {
                for u in 0..y.size() {
                    for v in 0..y.size() {
                        if u == v {
                            continue;
                        }
                        let seed = PartialMap::from_pairs(n, &[(x, u), (z, v)])?;
                        if let Some(h) = first_homomorphism(a, y, &seed, budget)? {
                            found = Some(SeparatingHom {
                                generator: j,
                                map: h,
                            });
                            break 'gens;
                        }
                    }
                }
            }
            let Some(h) = found else {
                return Ok(Separation::Unseparated(x, z));
            };
            for p in 0..n {
                for q in p + 1..n {
                    if h.map[p] != h.map[q] {
                        separated[p * n + q] = true;
                    }
                }
            }
            homs.push(h);
        }
    }
    Ok(Separation::Separated(homs))
}

/// Membership of `a` in SP(`ys`) by point separation. Algebras with at most
/// one element embed in the empty product.
pub fn in_sp(a: &FiniteAlgebra, ys: &[&FiniteAlgebra]) -> Result<bool> {
    Ok(separate_points(a, ys, SearchBudget::default())?.is_separated())
}

/// The explicit embedding of `a` into the product of the separating
/// homomorphisms' targets: element `x` goes to the tuple `(h_k(x))_k`.
pub fn sp_embedding_tuples(a: &FiniteAlgebra, homs: &[SeparatingHom]) -> Vec<Vec<usize>> {
    (0..a.size())
        .map(|x| homs.iter().map(|h| h.map[x]).collect())
        .collect()
}
