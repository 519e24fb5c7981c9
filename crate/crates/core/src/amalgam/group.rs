use std::collections::HashMap;

use crate::algcore::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};

/// The group signature: `mul` (binary), `inv` (unary), `e` (constant).
pub fn group_signature() -> Signature {
    Signature::new([("mul", 2), ("inv", 1), ("e", 0)]).expect("distinct symbols")
}

/// A finite group given by its tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    alg: FiniteAlgebra,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Checks the group axioms on an algebra with operations `mul`, `inv`
    /// and `e`. Associativity is tested with Light's test on a generating
    /// set.
    pub fn from_algebra(alg: FiniteAlgebra) -> Result<Self> {
        let mul_op = alg.op_by_name("mul")?;
        let inv_op = alg.op_by_name("inv")?;
        let e_op = alg.op_by_name("e")?;
        if alg.signature().len() != 3
            || alg.signature().arity(mul_op) != 2
            || alg.signature().arity(inv_op) != 1
            || alg.signature().arity(e_op) != 0
        {
            return Err(Error::NotAGroup(
                "expected operations mul/2, inv/1, e/0".into(),
            ));
        }
        let n = alg.size();
        let g = FiniteGroup {
            mul: alg.table(mul_op).to_vec(),
            inv: alg.table(inv_op).to_vec(),
            identity: alg.table(e_op)[0],
            alg,
        };
        for x in 0..n {
            if g.mul(g.identity, x) != x || g.mul(x, g.identity) != x {
                return Err(Error::NotAGroup(format!("e is not an identity at {}", x)));
            }
            if g.mul(x, g.inv(x)) != g.identity || g.mul(g.inv(x), x) != g.identity {
                return Err(Error::NotAGroup(format!("inv fails at {}", x)));
            }
        }
        for s in g.generating_set() {
            for x in 0..n {
                for y in 0..n {
                    if g.mul(g.mul(x, s), y) != g.mul(x, g.mul(s, y)) {
                        return Err(Error::NotAGroup(format!(
                            "mul is not associative at ({}, {}, {})",
                            x, s, y
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    /// A group from a multiplication table alone; identity and inverses
    /// are read off the table.
    pub fn from_mul_table(n: usize, mul: Vec<usize>) -> Result<Self> {
        if n == 0 || mul.len() != n * n || mul.iter().any(|&v| v >= n) {
            return Err(Error::NotAGroup("malformed multiplication table".into()));
        }
        let m = |a: usize, b: usize| mul[a * n + b];
        let e = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let inv = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| m(x, y) == e)
                    .ok_or_else(|| Error::NotAGroup(format!("{} has no inverse", x)))
            })
            .collect::<Result<Vec<_>>>()?;
        let alg = FiniteAlgebra::new(group_signature(), n, vec![mul, inv, vec![e]])?;
        FiniteGroup::from_algebra(alg)
    }

    /// The symmetric group on `n` points; elements are the permutations
    /// in lexicographic order, so the identity is element 0. The product
    /// `a b` applies `b` first.
    pub fn symmetric(n: usize) -> Result<Self> {
        let perms = permutations(n);
        Self::of_permutations(&perms)
    }

    /// The group formed by a list of permutations closed under
    /// composition, indexed in the given order.
    pub fn of_permutations(perms: &[Vec<usize>]) -> Result<Self> {
        let k = perms.len();
        let position: HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let index = |p: &Vec<usize>| {
            position
                .get(p.as_slice())
                .copied()
                .ok_or_else(|| Error::NotAGroup("permutations not closed".into()))
        };
        let mut mul = Vec::with_capacity(k * k);
        for a in perms {
            for b in perms {
                let c: Vec<usize> = b.iter().map(|&i| a[i]).collect();
                mul.push(index(&c)?);
            }
        }
        FiniteGroup::from_mul_table(k, mul)
    }

    fn generating_set(&self) -> Vec<usize> {
        let n = self.order();
        let mut gens = Vec::new();
        let mut span = vec![false; n];
        span[self.identity] = true;
        for x in 0..n {
            if span[x] {
                continue;
            }
            gens.push(x);
            span = vec![false; n];
            span[self.identity] = true;
            let mut stack = vec![self.identity];
            while let Some(y) = stack.pop() {
                for &g in &gens {
                    let z = self.mul(y, g);
                    if !span[z] {
                        span[z] = true;
                        stack.push(z);
                    }
                }
            }
        }
        gens
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.alg
    }

    pub fn order(&self) -> usize {
        self.alg.size()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Whether `map` is a one-to-one homomorphism from `self` to `target`.
    pub fn is_embedding_into(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        let n = self.order();
        if map.len() != n || map.iter().any(|&v| v >= target.order()) {
            return false;
        }
        let mut seen = vec![false; target.order()];
        for &v in map {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// The stabilizer of the last point in the symmetric group on `n` points,
/// with its inclusion into [`FiniteGroup::symmetric`].
pub fn stabilizer_of_last(n: usize) -> Result<(FiniteGroup, Vec<usize>)> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one point".into()));
    }
    let all = permutations(n);
    let fixing: Vec<Vec<usize>> = all.iter().filter(|p| p[n - 1] == n - 1).cloned().collect();
    let inclusion = fixing
        .iter()
        .map(|p| all.binary_search(p).expect("present"))
        .collect();
    Ok((FiniteGroup::of_permutations(&fixing)?, inclusion))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_groups() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        let orders: Vec<usize> = (0..6).map(|a| s3.element_order(a)).collect();
        assert_eq!(orders, vec![1, 2, 2, 3, 3, 2]);
        let (b, inc) = stabilizer_of_last(3).unwrap();
        assert_eq!(b.order(), 2);
        assert!(b.is_embedding_into(&s3, &inc));
    }

    #[test]
    fn rejects_non_groups() {
        // Left-zero semigroup table on two points.
        assert!(FiniteGroup::from_mul_table(2, vec![0, 0, 1, 1]).is_err());
        let z2 = FiniteGroup::from_mul_table(2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(z2.element_order(1), 2);
    }

    #[test]
    fn light_test_catches_non_associative_loop() {
        // A loop of order 5 that is not a group.
        let t = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(matches!(
            FiniteGroup::from_mul_table(5, t),
            Err(Error::NotAGroup(_))
        ));
    }
}
