//! HLT coset enumeration over the trivial subgroup.
//!
//! Cosets of the trivial subgroup are group elements, so a closed enumeration
//! yields the right regular action of each generator, from which the full
//! multiplication table follows. Coincidences are processed as soon as they
//! are found. The finished table is renumbered in order of first appearance
//! (breadth first, columns in generator order), so numbering depends only on
//! the presentation.

use thiserror::Error;

use super::presentation::GroupPresentation;
use super::table::FiniteGroupTable;
use super::word::{GroupWord, Letter};

pub const DEFAULT_MAX_COSETS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("coset enumeration exhausted {0} cosets without closing; the group may be infinite")]
    Exhausted(usize),
}

struct CosetTable {
    columns: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    limit: usize,
}

fn inverse_column(col: usize) -> usize {
    col ^ 1
}

impl CosetTable {
    fn new(generators: usize, limit: usize) -> Self {
        CosetTable {
            columns: 2 * generators,
            rows: vec![vec![None; 2 * generators]],
            parent: vec![0],
            limit,
        }
    }

    fn define(&mut self, coset: usize, col: usize) -> Result<(), EnumerationError> {
        if self.rows.len() >= self.limit {
            return Err(EnumerationError::Exhausted(self.limit));
        }
        let fresh = self.rows.len();
        self.rows.push(vec![None; self.columns]);
        self.parent.push(fresh);
        self.rows[coset][col] = Some(fresh);
        self.rows[fresh][inverse_column(col)] = Some(coset);
        Ok(())
    }

    fn is_live(&self, coset: usize) -> bool {
        self.parent[coset] == coset
    }

    fn rep(&mut self, coset: usize) -> usize {
        let mut root = coset;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut c = coset;
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut Vec<usize>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (keep, drop) = (a.min(b), a.max(b));
            self.parent[drop] = keep;
            queue.push(drop);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut next = 0;
        while next < queue.len() {
            let dead = queue[next];
            next += 1;
            for col in 0..self.columns {
                let Some(target) = self.rows[dead][col] else {
                    continue;
                };
                let inv = inverse_column(col);
                if self.rows[target][inv] == Some(dead) {
                    self.rows[target][inv] = None;
                }
                let (d, t) = (self.rep(dead), self.rep(target));
                if let Some(x) = self.rows[d][col] {
                    self.merge(t, x, &mut queue);
                } else if let Some(x) = self.rows[t][inv] {
                    self.merge(d, x, &mut queue);
                } else {
                    self.rows[d][col] = Some(t);
                    self.rows[t][inv] = Some(d);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, coset: usize, word: &[usize]) -> Result<(), EnumerationError> {
        if word.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (coset, coset);
        let (mut i, mut j) = (0isize, word.len() as isize - 1);
        loop {
            while i <= j {
                match self.rows[f][word[i as usize]] {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.rows[b][inverse_column(word[j as usize])] {
                    Some(next) => {
                        b = next;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            } else if i == j {
                let col = word[i as usize];
                self.rows[f][col] = Some(b);
                self.rows[b][inverse_column(col)] = Some(f);
                return Ok(());
            } else {
                self.define(f, word[i as usize])?;
            }
        }
    }
}

/// Enumerates the group of `p`, failing once more than `max_cosets` cosets
/// would have to be defined.
pub fn todd_coxeter(
    p: &GroupPresentation,
    max_cosets: usize,
) -> Result<FiniteGroupTable, EnumerationError> {
    if max_cosets == 0 {
        return Err(EnumerationError::Exhausted(0));
    }
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| l.column()).collect())
        .collect();
    let mut table = CosetTable::new(p.generator_count(), max_cosets);

    let mut coset = 0;
    while coset < table.rows.len() {
        for r in &relators {
            if !table.is_live(coset) {
                break;
            }
            table.scan_and_fill(coset, r)?;
        }
        for col in 0..table.columns {
            if table.is_live(coset) && table.rows[coset][col].is_none() {
                table.define(coset, col)?;
            }
        }
        coset += 1;
    }

    Ok(standardize(&mut table, p.generator_count()))
}

fn standardize(table: &mut CosetTable, generators: usize) -> FiniteGroupTable {
    let columns = table.columns;
    // Old coset -> new element index, in order of first appearance.
    let mut index = vec![usize::MAX; table.rows.len()];
    let mut order = vec![0usize];
    let mut tree: Vec<Option<(usize, usize)>> = vec![None];
    index[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let old = order[k];
        for col in 0..columns {
            let target = table.rows[old][col].expect("closed table is complete");
            let target = table.rep(target);
            if index[target] == usize::MAX {
                index[target] = order.len();
                order.push(target);
                tree.push(Some((k, col)));
            }
        }
        k += 1;
    }
    let n = order.len();

    let mut action = vec![0usize; n * columns];
    for (new, &old) in order.iter().enumerate() {
        for col in 0..columns {
            let target = table.rows[old][col].expect("closed table is complete");
            action[new * columns + col] = index[table.rep(target)];
        }
    }

    let mut representatives = vec![GroupWord::identity(); n];
    for e in 1..n {
        let (parent, col) = tree[e].expect("non-identity element has a parent");
        let letter = Letter::new(col / 2, col % 2 == 1);
        representatives[e] = representatives[parent].mul(&GroupWord::letter(letter));
    }

    // product(a, b) = a acted on by b's representative; parents precede children.
    let mut product = vec![0usize; n * n];
    for a in 0..n {
        product[a * n] = a;
        for b in 1..n {
            let (parent, col) = tree[b].expect("non-identity element has a parent");
            let via = product[a * n + parent];
            product[a * n + b] = action[via * columns + col];
        }
    }

    let generator_images = (0..generators).map(|g| action[2 * g]).collect();
    FiniteGroupTable::from_parts(product, generator_images, representatives)
        .expect("closed coset table yields a group")
}
