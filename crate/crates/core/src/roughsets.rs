//! Equivalence relations as partitions, and the Pawlak approximation operators.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::linalg::ExactMatrix;
use crate::sets::{indices_to_mask, ElementSet, SetFamily, Universe};

/// Largest universe [`enumerate_partitions`] accepts; Bell(12) = 4,213,597.
pub const MAX_ENUMERATION_UNIVERSE: usize = 12;

/// Largest universe [`Partition::upper_full_sets`] scans.
pub const MAX_UPPER_FULL_UNIVERSE: usize = 20;

/// A partition of a universe into disjoint nonempty blocks.
///
/// Blocks are sorted internally and ordered by their smallest element, so
/// two partitions of the same universe are equal iff they have the same
/// blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    universe: Universe,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Validates the disjoint-cover invariant and canonicalizes block order.
    pub fn new(universe: &Universe, blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let n = universe.len();
        let mut seen = vec![false; n];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x >= n {
                    return Err(Error::UnknownLabel(format!("#{x}")));
                }
                if seen[x] {
                    return Err(Error::InvalidPartition(format!(
                        "element {} appears in more than one block",
                        universe.label(x)
                    )));
                }
                seen[x] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "element {} is not covered",
                universe.label(missing)
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition {
            universe: universe.clone(),
            blocks,
        })
    }

    pub fn from_labels<S: AsRef<str>>(universe: &Universe, blocks: &[&[S]]) -> Result<Partition> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|l| universe.index_of(l.as_ref())).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Partition::new(universe, blocks)
    }

    /// Builds the partition in which elements with equal keys share a block.
    pub fn from_keys<K: PartialEq>(universe: &Universe, keys: &[K]) -> Result<Partition> {
        if keys.len() != universe.len() {
            return Err(Error::LengthMismatch {
                expected: universe.len(),
                found: keys.len(),
            });
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, key) in keys.iter().enumerate() {
            match blocks.iter_mut().find(|b| keys[b[0]] == *key) {
                Some(block) => block.push(i),
                None => blocks.push(vec![i]),
            }
        }
        Ok(Partition {
            universe: universe.clone(),
            blocks,
        })
    }

    /// Every element in its own block.
    pub fn discrete(universe: &Universe) -> Partition {
        Partition {
            universe: universe.clone(),
            blocks: (0..universe.len()).map(|i| vec![i]).collect(),
        }
    }

    /// One block holding the whole universe.
    pub fn single_block(universe: &Universe) -> Partition {
        Partition {
            universe: universe.clone(),
            blocks: vec![(0..universe.len()).collect()],
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sets(&self) -> Vec<ElementSet> {
        self.blocks
            .iter()
            .map(|b| {
                self.universe
                    .subset_of_indices(b.iter().copied())
                    .expect("blocks index the universe")
            })
            .collect()
    }

    /// Block index of every element.
    pub fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.universe.len()];
        for (k, block) in self.blocks.iter().enumerate() {
            for &x in block {
                of[x] = k;
            }
        }
        of
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.blocks
            .iter()
            .any(|blk| blk.contains(&a) && blk.contains(&b))
    }

    /// Union of the blocks contained in `x`.
    pub fn lower_approx(&self, x: &ElementSet) -> Result<ElementSet> {
        x.ensure_universe(&self.universe)?;
        let members = self
            .blocks
            .iter()
            .filter(|b| b.iter().all(|&e| x.contains(e)))
            .flatten()
            .copied();
        self.universe.subset_of_indices(members)
    }

    /// Union of the blocks meeting `x`.
    pub fn upper_approx(&self, x: &ElementSet) -> Result<ElementSet> {
        x.ensure_universe(&self.universe)?;
        let members = self
            .blocks
            .iter()
            .filter(|b| b.iter().any(|&e| x.contains(e)))
            .flatten()
            .copied();
        self.universe.subset_of_indices(members)
    }

    /// The block-incidence matrix: one row per block, one column per element,
    /// entry 1 iff the element lies in the block. Columns follow universe
    /// order and rows follow block order.
    pub fn encode_matrix(&self, spec: FieldSpec) -> ExactMatrix {
        let columns: Vec<usize> = (0..self.universe.len()).collect();
        let rows: Vec<usize> = (0..self.blocks.len()).collect();
        self.encode_matrix_ordered(spec, &columns, &rows)
            .expect("identity orderings are valid")
    }

    /// The block-incidence matrix under explicit column and row orderings.
    /// `columns` lists element indices and `rows` lists block indices; each
    /// must be a permutation. Column labels follow `columns`.
    pub fn encode_matrix_ordered(
        &self,
        spec: FieldSpec,
        columns: &[usize],
        rows: &[usize],
    ) -> Result<ExactMatrix> {
        check_permutation(columns, self.universe.len())?;
        check_permutation(rows, self.blocks.len())?;
        let block_of = &self.block_of();
        let entries = rows
            .iter()
            .flat_map(|&blk| {
                columns.iter().map(move |&x| {
                    if block_of[x] == blk {
                        spec.one()
                    } else {
                        spec.zero()
                    }
                })
            })
            .collect();
        let labels = Universe::new(columns.iter().map(|&c| self.universe.label(c).to_string()))?;
        ExactMatrix::new(spec, rows.len(), columns.len(), entries, Some(labels))
    }

    /// The partition of the intersection of both equivalence relations: every
    /// nonempty pairwise block intersection.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        let theirs = other.block_of();
        let ours = self.block_of();
        let keys: Vec<(usize, usize)> = ours.into_iter().zip(theirs).collect();
        Partition::from_keys(&self.universe, &keys)
    }

    /// Every subset whose upper approximation is the whole universe, i.e.
    /// every subset meeting all blocks.
    pub fn upper_full_sets(&self) -> Result<SetFamily> {
        let n = self.universe.len();
        if n > MAX_UPPER_FULL_UNIVERSE {
            return Err(Error::UniverseTooLarge {
                n,
                cap: MAX_UPPER_FULL_UNIVERSE,
            });
        }
        let block_masks: Vec<u64> = self.blocks.iter().map(|b| indices_to_mask(b)).collect();
        let masks = self
            .universe
            .all_subset_masks()
            .filter(|m| block_masks.iter().all(|b| m & b != 0));
        Ok(SetFamily::from_masks(&self.universe, masks))
    }

    /// Restricted growth string: block index of each element, blocks
    /// numbered by first appearance.
    pub fn restricted_growth_string(&self) -> Vec<usize> {
        self.block_of()
    }
}

fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidPartition(format!(
                "ordering {order:?} is not a permutation of 0..{n}"
            )));
        }
    }
    if order.len() != n {
        return Err(Error::InvalidPartition(format!(
            "ordering {order:?} is not a permutation of 0..{n}"
        )));
    }
    Ok(())
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

/// Blocks separated by ` | `, e.g. `x1 x3 | x2 x4 x5`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&i| self.universe.label(i))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        f.write_str(&blocks.join(" | "))
    }
}

/// Every partition of `universe`, in restricted-growth-string order.
pub fn enumerate_partitions(universe: &Universe) -> Result<Partitions> {
    let n = universe.len();
    if n > MAX_ENUMERATION_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            cap: MAX_ENUMERATION_UNIVERSE,
        });
    }
    Ok(Partitions {
        universe: universe.clone(),
        rgs: Some(vec![0; n]),
    })
}

/// Iterator returned by [`enumerate_partitions`].
pub struct Partitions {
    universe: Universe,
    rgs: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let rgs = self.rgs.take()?;
        let partition = Partition::from_keys(&self.universe, &rgs).expect("length matches");

        // Next string: bump the last position that may still grow, zero the tail.
        let mut prefix_max = Vec::with_capacity(rgs.len());
        let mut running = 0;
        for &v in &rgs {
            running = running.max(v);
            prefix_max.push(running);
        }
        if let Some(i) = (1..rgs.len()).rev().find(|&i| rgs[i] <= prefix_max[i - 1]) {
            let mut next = rgs;
            next[i] += 1;
            next[i + 1..].iter_mut().for_each(|v| *v = 0);
            self.rgs = Some(next);
        }
        Some(partition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u5() -> Universe {
        Universe::with_size(5).unwrap()
    }

    fn two_blocks(u: &Universe) -> Partition {
        Partition::from_labels(u, &[&["x1", "x3"], &["x2", "x4", "x5"]]).unwrap()
    }

    fn bell(n: usize) -> u64 {
        // B(k+1) = sum_j C(k, j) B(j)
        let mut b = vec![1u64];
        for k in 0..n {
            let mut binom = 1u64;
            let mut next = 0;
            for (j, bj) in b.iter().enumerate().take(k + 1) {
                next += binom * bj;
                binom = binom * (k - j) as u64 / (j + 1) as u64;
            }
            b.push(next);
        }
        b[n]
    }

    #[test]
    fn validation() {
        let u = Universe::with_size(3).unwrap();
        assert!(matches!(
            Partition::new(&u, vec![vec![0, 1]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::new(&u, vec![vec![0, 1], vec![1, 2]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::new(&u, vec![vec![0, 1, 2], vec![]]),
            Err(Error::InvalidPartition(_))
        ));
        let p = Partition::new(&u, vec![vec![2, 1], vec![0]]).unwrap();
        assert_eq!(p.blocks(), [vec![0], vec![1, 2]]);
    }

    #[test]
    fn lower_approximation() {
        let u = u5();
        let p = two_blocks(&u);
        let x = u.subset(&["x1", "x2", "x3"]).unwrap();
        assert_eq!(
            p.lower_approx(&x).unwrap(),
            u.subset(&["x1", "x3"]).unwrap()
        );
        assert_eq!(p.lower_approx(&u.full_set()).unwrap(), u.full_set());
        assert_eq!(p.lower_approx(&u.empty_set()).unwrap(), u.empty_set());
    }

    #[test]
    fn upper_approximation() {
        let u = u5();
        let p = two_blocks(&u);
        let x = u.subset(&["x1", "x2", "x3"]).unwrap();
        assert_eq!(p.upper_approx(&x).unwrap(), u.full_set());
        assert_eq!(p.upper_approx(&u.empty_set()).unwrap(), u.empty_set());
        let x4 = u.subset(&["x4"]).unwrap();
        assert_eq!(
            p.upper_approx(&x4).unwrap(),
            u.subset(&["x2", "x4", "x5"]).unwrap()
        );
    }

    #[test]
    fn approximation_requires_same_universe() {
        let p = two_blocks(&u5());
        let other = Universe::new(["a"]).unwrap();
        assert_eq!(
            p.lower_approx(&other.full_set()),
            Err(Error::UniverseMismatch)
        );
        assert_eq!(
            p.upper_approx(&other.full_set()),
            Err(Error::UniverseMismatch)
        );
    }

    #[test]
    fn encoding() {
        let u = u5();
        let b = two_blocks(&u).encode_matrix(FieldSpec::Binary);
        let expected = ExactMatrix::from_rows(
            FieldSpec::Binary,
            &[vec![1, 0, 1, 0, 0], vec![0, 1, 0, 1, 1]],
        )
        .unwrap();
        assert_eq!(b, expected);
        assert_eq!(
            Partition::discrete(&u).encode_matrix(FieldSpec::Rational),
            ExactMatrix::identity(FieldSpec::Rational, 5).unwrap()
        );
        assert_eq!(
            Partition::single_block(&u).encode_matrix(FieldSpec::Rational),
            ExactMatrix::from_rows(FieldSpec::Rational, &[vec![1; 5]]).unwrap()
        );
    }

    #[test]
    fn encoding_rejects_bad_orders() {
        let p = two_blocks(&u5());
        assert!(p
            .encode_matrix_ordered(FieldSpec::Binary, &[0, 1, 2, 3], &[0, 1])
            .is_err());
        assert!(p
            .encode_matrix_ordered(FieldSpec::Binary, &[0, 1, 2, 3, 3], &[0, 1])
            .is_err());
        assert!(p
            .encode_matrix_ordered(FieldSpec::Binary, &[0, 1, 2, 3, 4], &[1, 1])
            .is_err());
    }

    #[test]
    fn meets() {
        let u = Universe::with_size(4).unwrap();
        let p1 = Partition::from_labels(&u, &[&["x1", "x2"], &["x3", "x4"]]).unwrap();
        let p2 = Partition::from_labels(&u, &[&["x1", "x2", "x3"], &["x4"]]).unwrap();
        let expected = Partition::from_labels(&u, &[&["x1", "x2"], &["x3"], &["x4"]]).unwrap();
        assert_eq!(p1.meet(&p2).unwrap(), expected);
        assert_eq!(p1.meet(&p1).unwrap(), p1);
        assert_eq!(Partition::single_block(&u).meet(&p1).unwrap(), p1);
        let other = Partition::single_block(&Universe::with_size(3).unwrap());
        assert_eq!(p1.meet(&other), Err(Error::UniverseMismatch));
    }

    #[test]
    fn partition_counts_match_bell_numbers() {
        assert_eq!(bell(3), 5);
        assert_eq!(bell(6), 203);
        for n in 1..=8 {
            let u = Universe::with_size(n).unwrap();
            let all: Vec<Partition> = enumerate_partitions(&u).unwrap().collect();
            assert_eq!(all.len() as u64, bell(n), "n = {n}");
            let mut rgs: Vec<Vec<usize>> = all
                .iter()
                .map(Partition::restricted_growth_string)
                .collect();
            let sorted = {
                let mut s = rgs.clone();
                s.sort();
                s
            };
            assert_eq!(rgs, sorted, "RGS order");
            rgs.dedup();
            assert_eq!(rgs.len() as u64, bell(n));
        }
    }

    #[test]
    fn enumeration_guard() {
        let u = Universe::with_size(13).unwrap();
        assert!(matches!(
            enumerate_partitions(&u),
            Err(Error::UniverseTooLarge { n: 13, cap: 12 })
        ));
    }

    #[test]
    fn upper_full_sets_brute_force() {
        let u = u5();
        let p = two_blocks(&u);
        let family = p.upper_full_sets().unwrap();
        // Independent oracle: test every subset through upper_approx.
        let mut count = 0;
        for mask in 0u64..32 {
            let set = ElementSet::from_mask(&u, mask);
            let full = p.upper_approx(&set).unwrap() == u.full_set();
            assert_eq!(family.contains(&set), full);
            count += usize::from(full);
        }
        assert_eq!(count, 21);
        assert_eq!(family.len(), 21);

        let discrete = Partition::discrete(&u).upper_full_sets().unwrap();
        assert_eq!(discrete.index_sets(), [vec![0, 1, 2, 3, 4]]);
        let single = Partition::single_block(&u).upper_full_sets().unwrap();
        assert_eq!(single.len(), 31);
    }
}
