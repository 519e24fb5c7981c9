use std::fmt;

use crate::error::{Error, Result};

/// An operation symbol with its (finite) arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

/// A finitary signature. Symbol order is significant: it fixes table order,
/// serialization order and the iteration order of every closure computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    ops: Vec<OpSymbol>,
}

impl Signature {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut out: Vec<OpSymbol> = Vec::new();
        for (name, arity) in ops {
            let name = name.into();
            if out.iter().any(|o| o.name == name) {
                return Err(Error::DuplicateSymbol(name));
            }
            out.push(OpSymbol { name, arity });
        }
        Ok(Signature { ops: out })
    }

    /// A single unary operation named `name`.
    pub fn unary(name: &str) -> Self {
        Signature {
            ops: vec![OpSymbol {
                name: name.to_string(),
                arity: 1,
            }],
        }
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn has_constants(&self) -> bool {
        self.ops.iter().any(|o| o.arity == 0)
    }

    pub fn is_all_unary(&self) -> bool {
        self.ops.iter().all(|o| o.arity == 1)
    }
}

/// Number of cells in a table of the given arity over `size` elements.
pub(crate) fn table_len(size: usize, arity: usize) -> Option<usize> {
    size.checked_pow(arity as u32)
}

/// Row-major mixed-radix index of an argument tuple; the first argument is
/// the most significant digit.
#[inline]
pub fn tuple_index(size: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * size + a)
}

/// Inverse of [`tuple_index`]; writes the digits into `out`.
#[inline]
pub fn decode_tuple(size: usize, mut index: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % size;
        index /= size;
    }
}

/// Calls `f` on every tuple of length `len` over `0..size`, in lexicographic
/// order.
pub(crate) fn for_each_tuple(size: usize, len: usize, mut f: impl FnMut(&[usize])) {
    if len > 0 && size == 0 {
        return;
    }
    let mut cur = vec![0usize; len];
    loop {
        f(&cur);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < size {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// A finite algebra on the carrier `0..size` with one total table per
/// operation symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    signature: Signature,
    size: usize,
    tables: Vec<Vec<usize>>,
}

/// A subalgebra together with its inclusion into the parent carrier.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    pub algebra: FiniteAlgebra,
    /// `inclusion[i]` is the parent element represented by element `i`.
    pub inclusion: Vec<usize>,
}

impl Subalgebra {
    /// Index of parent element `x` in the subalgebra, if present.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.inclusion.binary_search(&x).ok()
    }
}

/// A direct product with its projection maps.
#[derive(Debug, Clone)]
pub struct Product {
    pub algebra: FiniteAlgebra,
    pub projections: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(signature: Signature, size: usize, tables: Vec<Vec<usize>>) -> Result<Self> {
        if tables.len() != signature.len() {
            return Err(Error::InvalidTable {
                op: "<all>".into(),
                reason: format!(
                    "expected {} tables, got {}",
                    signature.len(),
                    tables.len()
                ),
            });
        }
        for (sym, table) in signature.ops().iter().zip(&tables) {
            let expected = table_len(size, sym.arity).ok_or_else(|| Error::InvalidTable {
                op: sym.name.clone(),
                reason: "table too large".into(),
            })?;
            if table.len() != expected {
                return Err(Error::InvalidTable {
                    op: sym.name.clone(),
                    reason: format!("expected {} entries, got {}", expected, table.len()),
                });
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= size) {
                return Err(Error::InvalidTable {
                    op: sym.name.clone(),
                    reason: format!("entry {} outside carrier of size {}", bad, size),
                });
            }
        }
        Ok(FiniteAlgebra {
            signature,
            size,
            tables,
        })
    }

    /// Builds the tables by evaluating `f(op, args)` on every argument tuple.
    pub fn from_fn(
        signature: Signature,
        size: usize,
        mut f: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(signature.len());
        for (op, sym) in signature.ops().iter().enumerate() {
            let len = table_len(size, sym.arity).ok_or_else(|| Error::InvalidTable {
                op: sym.name.clone(),
                reason: "table too large".into(),
            })?;
            let mut table = Vec::with_capacity(len);
            for_each_tuple(size, sym.arity, |args| table.push(f(op, args)));
            tables.push(table);
        }
        FiniteAlgebra::new(signature, size, tables)
    }

    /// The one-element algebra.
    pub fn trivial(signature: Signature) -> Self {
        let tables = vec![vec![0]; signature.len()];
        FiniteAlgebra {
            signature,
            size: 1,
            tables,
        }
    }

    /// The empty algebra; only exists when there are no constants.
    pub fn empty(signature: Signature) -> Result<Self> {
        if signature.has_constants() {
            return Err(Error::InvalidArgument(
                "the empty algebra requires a signature without constants".into(),
            ));
        }
        let tables = signature
            .ops()
            .iter()
            .map(|o| if o.arity == 0 { vec![0] } else { Vec::new() })
            .collect();
        Ok(FiniteAlgebra {
            signature,
            size: 0,
            tables,
        })
    }

    /// `C_d`: `d` elements cyclically permuted by the unary operation `a`.
    pub fn cyclic_unary(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("cyclic algebra needs d >= 1".into()));
        }
        let table = (0..d).map(|i| (i + 1) % d).collect();
        FiniteAlgebra::new(Signature::unary("a"), d, vec![table])
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][tuple_index(self.size, args)]
    }

    pub fn op_by_name(&self, name: &str) -> Result<usize> {
        self.signature
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x >= self.size {
            return Err(Error::ElementOutOfRange {
                element: x,
                size: self.size,
            });
        }
        Ok(())
    }

    /// Sorted carrier of the least subalgebra containing `seed`.
    pub fn closure(&self, seed: &[usize]) -> Result<Vec<usize>> {
        let mut member = vec![false; self.size];
        let mut elems: Vec<usize> = Vec::new();
        for &x in seed {
            self.check_element(x)?;
            if !member[x] {
                member[x] = true;
                elems.push(x);
            }
        }
        for (op, sym) in self.signature.ops().iter().enumerate() {
            if sym.arity == 0 {
                let c = self.tables[op][0];
                if !member[c] {
                    member[c] = true;
                    elems.push(c);
                }
            }
        }
        // Semi-naive closure: each round only visits tuples touching an
        // element added in the previous round.
        let mut frontier = 0;
        while frontier < elems.len() {
            let end = elems.len();
            for (op, sym) in self.signature.ops().iter().enumerate() {
                if sym.arity == 0 {
                    continue;
                }
                let snapshot = elems[..end].to_vec();
                let mut args = vec![0; sym.arity];
                for_each_tuple(end, sym.arity, |idx| {
                    if idx.iter().all(|&i| i < frontier) {
                        return;
                    }
                    for (a, &i) in args.iter_mut().zip(idx) {
                        *a = snapshot[i];
                    }
                    let r = self.tables[op][tuple_index(self.size, &args)];
                    if !member[r] {
                        member[r] = true;
                        elems.push(r);
                    }
                });
            }
            frontier = end;
        }
        elems.sort_unstable();
        Ok(elems)
    }

    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.size];
        for &x in subset {
            if x >= self.size {
                return false;
            }
            member[x] = true;
        }
        let elems: Vec<usize> = (0..self.size).filter(|&x| member[x]).collect();
        for (op, sym) in self.signature.ops().iter().enumerate() {
            let mut ok = true;
            let mut args = vec![0; sym.arity];
            for_each_tuple(elems.len(), sym.arity, |idx| {
                if !ok {
                    return;
                }
                for (a, &i) in args.iter_mut().zip(idx) {
                    *a = elems[i];
                }
                if !member[self.tables[op][tuple_index(self.size, &args)]] {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// The subalgebra generated by `seed`, with its inclusion map.
    pub fn generated_subalgebra(&self, seed: &[usize]) -> Result<Subalgebra> {
        let carrier = self.closure(seed)?;
        Ok(self.induced(carrier))
    }

    /// The subalgebra on an already closed subset.
    pub fn subalgebra_on(&self, subset: &[usize]) -> Result<Subalgebra> {
        for &x in subset {
            self.check_element(x)?;
        }
        if !self.is_closed(subset) {
            return Err(Error::NotClosed);
        }
        let mut carrier = subset.to_vec();
        carrier.sort_unstable();
        carrier.dedup();
        Ok(self.induced(carrier))
    }

    fn induced(&self, carrier: Vec<usize>) -> Subalgebra {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &x) in carrier.iter().enumerate() {
            pos[x] = i;
        }
        let n = carrier.len();
        let mut tables = Vec::with_capacity(self.signature.len());
        for (op, sym) in self.signature.ops().iter().enumerate() {
            let mut table = Vec::with_capacity(table_len(n, sym.arity).unwrap_or(0));
            let mut args = vec![0; sym.arity];
            for_each_tuple(n, sym.arity, |idx| {
                for (a, &i) in args.iter_mut().zip(idx) {
                    *a = carrier[i];
                }
                table.push(pos[self.tables[op][tuple_index(self.size, &args)]]);
            });
            if sym.arity == 0 && n == 0 {
                // unreachable: constants force a nonempty closure
                table.clear();
            }
            tables.push(table);
        }
        Subalgebra {
            algebra: FiniteAlgebra {
                signature: self.signature.clone(),
                size: n,
                tables,
            },
            inclusion: carrier,
        }
    }

    /// Direct product over `factors`; the empty family gives the one-element
    /// algebra. Tuples are ordered lexicographically with the first factor
    /// most significant.
    pub fn direct_product(signature: &Signature, factors: &[&FiniteAlgebra]) -> Result<Product> {
        for f in factors {
            if f.signature != *signature {
                return Err(Error::SignatureMismatch);
            }
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.size))
            .ok_or(Error::SizeBound {
                what: "direct product",
                size: usize::MAX,
                bound: usize::MAX,
            })?;
        let radices: Vec<usize> = factors.iter().map(|f| f.size).collect();
        let decode = |mut x: usize, out: &mut [usize]| {
            for (slot, &r) in out.iter_mut().zip(&radices).rev() {
                *slot = x % r;
                x /= r;
            }
        };
        let encode = |t: &[usize]| t.iter().zip(&radices).fold(0, |acc, (&v, &r)| acc * r + v);
        let k = factors.len();
        let mut projections = vec![Vec::with_capacity(size); k];
        let mut tup = vec![0; k];
        for x in 0..size {
            decode(x, &mut tup);
            for (p, &v) in projections.iter_mut().zip(&tup) {
                p.push(v);
            }
        }
        let algebra = FiniteAlgebra::from_fn(signature.clone(), size, |op, args| {
            let mut res = vec![0; k];
            let mut comp_args = vec![0; args.len()];
            for (i, f) in factors.iter().enumerate() {
                for (ca, &a) in comp_args.iter_mut().zip(args) {
                    *ca = projections[i][a];
                }
                res[i] = f.apply(op, &comp_args);
            }
            encode(&res)
        })?;
        Ok(Product {
            algebra,
            projections,
        })
    }

    /// Disjoint union of algebras over an all-unary signature. Returns the
    /// union and the offset of each summand.
    pub fn disjoint_union(parts: &[&FiniteAlgebra]) -> Result<(FiniteAlgebra, Vec<usize>)> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidArgument(
                "disjoint union of an empty family needs a signature".into(),
            ));
        };
        let signature = first.signature.clone();
        if !signature.is_all_unary() {
            return Err(Error::InvalidArgument(
                "disjoint unions are only formed over all-unary signatures".into(),
            ));
        }
        let mut offsets = Vec::with_capacity(parts.len());
        let mut total = 0;
        for p in parts {
            if p.signature != signature {
                return Err(Error::SignatureMismatch);
            }
            offsets.push(total);
            total += p.size;
        }
        let mut tables = vec![Vec::with_capacity(total); signature.len()];
        for (p, &off) in parts.iter().zip(&offsets) {
            for (op, t) in tables.iter_mut().enumerate() {
                t.extend(p.tables[op].iter().map(|&v| v + off));
            }
        }
        Ok((FiniteAlgebra::new(signature, total, tables)?, offsets))
    }

    /// Whether `map` (carrier of `self` to carrier of `target`) commutes with
    /// every operation at every argument tuple.
    pub fn is_homomorphism(&self, target: &FiniteAlgebra, map: &[usize]) -> bool {
        if self.signature != target.signature
            || map.len() != self.size
            || map.iter().any(|&v| v >= target.size)
        {
            return false;
        }
        for (op, sym) in self.signature.ops().iter().enumerate() {
            let mut ok = true;
            let mut img = vec![0; sym.arity];
            for_each_tuple(self.size, sym.arity, |args| {
                if !ok {
                    return;
                }
                for (i, &a) in img.iter_mut().zip(args) {
                    *i = map[a];
                }
                if map[self.apply(op, args)] != target.apply(op, &img) {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// Elements `e` with `f(e, .., e) = e` for every operation `f`.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&e| {
                self.signature.ops().iter().enumerate().all(|(op, sym)| {
                    let args = vec![e; sym.arity];
                    self.apply(op, &args) == e
                })
            })
            .collect()
    }

    /// Orbit of `x` under a unary operation, in order of first visit.
    pub fn orbit(&self, op: usize, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        let mut cur = x;
        while !seen[cur] {
            seen[cur] = true;
            out.push(cur);
            cur = self.apply(op, &[cur]);
        }
        out
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra of size {}", self.size)?;
        for (sym, table) in self.signature.ops().iter().zip(&self.tables) {
            write!(f, "; {}/{}: {:?}", sym.name, sym.arity, table)?;
        }
        Ok(())
    }
}
