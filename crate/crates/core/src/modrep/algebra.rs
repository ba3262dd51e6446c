use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::is_prime;

/// The group algebra `kG` of a finite group over GF(p), given by the
/// multiplication table of `G`. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebra {
    p: u32,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    /// For every element other than the identity: `(parent, generator slot)`
    /// with `element = generators[slot] * parent`.
    spanning_tree: Vec<Option<(usize, usize)>>,
}

impl GroupAlgebra {
    /// Validate a multiplication table: closure, identity at index 0,
    /// associativity, two-sided inverses.
    pub fn from_table(p: u32, table: Vec<Vec<usize>>) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {a} has {} entries, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("row {a} contains out-of-range element {bad}")));
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::InvalidGroup(format!("element 0 is not an identity for element {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverses.push(b),
                None => return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse"))),
            }
        }
        let generators = greedy_generators(&table);
        let spanning_tree = spanning_tree(&table, &generators);
        Ok(Arc::new(GroupAlgebra { p, table, inverses, generators, spanning_tree }))
    }

    /// The group generated by permutations of `0..degree`. Elements are
    /// numbered in breadth-first order from the identity, multiplying by the
    /// generators on the left; composition is `(σ τ)(x) = σ(τ(x))`.
    pub fn from_permutations(p: u32, generators: &[Vec<usize>]) -> Result<Arc<Self>> {
        Ok(Self::permutation_group(p, generators)?.0)
    }

    /// Like [`GroupAlgebra::from_permutations`], also returning the element
    /// index of each generator.
    pub fn permutation_group(p: u32, generators: &[Vec<usize>]) -> Result<(Arc<Self>, Vec<usize>)> {
        let degree = generators.first().map_or(0, Vec::len);
        for (i, g) in generators.iter().enumerate() {
            let mut seen = vec![false; g.len()];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup(format!("generator {i} is not a permutation of 0..{degree}")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity];
        let mut index = std::collections::HashMap::new();
        index.insert(elements[0].clone(), 0usize);
        let mut head = 0;
        while head < elements.len() {
            let current = elements[head].clone();
            for g in generators {
                let prod: Vec<usize> = current.iter().map(|&x| g[x]).collect();
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                }
            }
            head += 1;
            if elements.len() > 100_000 {
                return Err(Error::InvalidGroup("generated group is too large".into()));
            }
        }
        let table = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&b.iter().map(|&x| a[x]).collect::<Vec<_>>()]).collect())
            .collect();
        let gens = generators.iter().map(|g| index[g]).collect();
        Ok((Self::from_table(p, table)?, gens))
    }

    /// Cyclic group of order `n`, element `i` being the `i`-th power of a generator.
    pub fn cyclic(p: u32, n: usize) -> Result<Arc<Self>> {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(p, table)
    }

    /// The trivial group: its modules are plain vector spaces.
    pub fn trivial(p: u32) -> Result<Arc<Self>> {
        Self::from_table(p, vec![vec![0]])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// A generating set, chosen greedily by lowest element index.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub(crate) fn spanning_tree(&self) -> &[Option<(usize, usize)>] {
        &self.spanning_tree
    }

    /// Check that `elements` is a subgroup; return its left cosets `xH`,
    /// each sorted, ordered by smallest member.
    pub fn left_cosets(&self, elements: &[usize]) -> Result<Vec<Vec<usize>>> {
        let n = self.order();
        let mut member = vec![false; n];
        for &h in elements {
            if h >= n {
                return Err(Error::InvalidGroup(format!("subgroup element {h} out of range")));
            }
            member[h] = true;
        }
        if !member[0] {
            return Err(Error::InvalidGroup("subgroup does not contain the identity".into()));
        }
        let hs: Vec<usize> = (0..n).filter(|&h| member[h]).collect();
        for &a in &hs {
            for &b in &hs {
                if !member[self.mul(a, b)] {
                    return Err(Error::InvalidGroup(format!("subset not closed: {a} * {b}")));
                }
            }
        }
        let mut assigned = vec![false; n];
        let mut cosets = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let mut coset: Vec<usize> = hs.iter().map(|&h| self.mul(x, h)).collect();
            coset.sort_unstable();
            for &y in &coset {
                assigned[y] = true;
            }
            cosets.push(coset);
        }
        Ok(cosets)
    }
}

fn greedy_generators(table: &[Vec<usize>]) -> Vec<usize> {
    let n = table.len();
    let mut generators = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    for g in 1..n {
        if inside[g] {
            continue;
        }
        generators.push(g);
        // closure of the current generating set
        let mut members: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            for &s in &generators {
                let y = table[s][x];
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            head += 1;
        }
    }
    generators
}

fn spanning_tree(table: &[Vec<usize>], generators: &[usize]) -> Vec<Option<(usize, usize)>> {
    let n = table.len();
    let mut tree = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (slot, &s) in generators.iter().enumerate() {
            let y = table[s][x];
            if !seen[y] {
                seen[y] = true;
                tree[y] = Some((x, slot));
                queue.push_back(y);
            }
        }
    }
    tree
}
