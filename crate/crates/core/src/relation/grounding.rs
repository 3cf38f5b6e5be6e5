use alloc::vec::Vec;

use super::{Relation, Tuple};

enum Entry {
    Complete(Tuple, u64),
    /// One copy of an incomplete tuple; `first_slot` indexes its null cells
    /// in the odometer.
    Copy {
        tuple: Tuple,
        first_slot: usize,
    },
}

/// Odometer over the null cells of every tuple copy.
///
/// The first slot is the most significant digit, so relations come out in
/// lexicographic order of (tuple, copy, attribute, domain value).
pub struct Groundings<'a> {
    relation: &'a Relation,
    entries: Vec<Entry>,
    /// (attribute, domain size) per slot
    slots: Vec<(usize, u32)>,
    digits: Vec<u32>,
    remaining: Option<u64>,
    done: bool,
    truncated: bool,
}

impl<'a> Groundings<'a> {
    pub(super) fn new(relation: &'a Relation, limit: Option<u64>) -> Self {
        let schema = relation.schema();
        let mut entries = Vec::new();
        let mut slots = Vec::new();
        for (t, m) in relation.rows() {
            if t.is_complete() {
                entries.push(Entry::Complete(t.clone(), *m));
                continue;
            }
            for _ in 0..*m {
                let first_slot = slots.len();
                for (i, c) in t.cells().iter().enumerate() {
                    if c.is_none() {
                        slots.push((i, schema.domain_size(i) as u32));
                    }
                }
                entries.push(Entry::Copy {
                    tuple: t.clone(),
                    first_slot,
                });
            }
        }
        let digits = alloc::vec![0; slots.len()];
        Groundings {
            relation,
            entries,
            slots,
            digits,
            remaining: limit,
            done: false,
            truncated: false,
        }
    }

    /// After the stream ends: true if it stopped at the limit while
    /// groundings were left.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    fn current(&self) -> Relation {
        let rows = self.entries.iter().map(|e| match e {
            Entry::Complete(t, m) => (t.clone(), *m),
            Entry::Copy { tuple, first_slot } => {
                let mut k = *first_slot;
                let cells = tuple
                    .cells()
                    .iter()
                    .map(|c| {
                        c.or_else(|| {
                            let v = self.digits[k];
                            k += 1;
                            Some(v)
                        })
                    })
                    .collect();
                (Tuple(cells), 1)
            }
        });
        Relation::from_rows(self.relation.schema().clone(), rows).expect("groundings stay inside the schema")
    }

    fn advance(&mut self) {
        for k in (0..self.slots.len()).rev() {
            self.digits[k] += 1;
            if self.digits[k] < self.slots[k].1 {
                return;
            }
            self.digits[k] = 0;
        }
        self.done = true;
    }
}

impl Iterator for Groundings<'_> {
    type Item = Relation;

    fn next(&mut self) -> Option<Relation> {
        if self.done {
            return None;
        }
        if let Some(rem) = self.remaining.as_mut() {
            if *rem == 0 {
                self.truncated = true;
                self.done = true;
                return None;
            }
            *rem -= 1;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use crate::relation::Relation;
    use crate::relation::{RelationBuilder, Schema, Tuple};
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn single_null_has_two_groundings() {
        let s = Schema::uniform(["A"], 2).unwrap();
        let r = Relation::from_rows(s.clone(), [(Tuple(vec![None]), 1)]).unwrap();
        let gs: Vec<_> = r.groundings(None).collect();
        assert_eq!(gs.len(), 2);
        assert_eq!(
            gs[0],
            Relation::from_rows(s.clone(), [(Tuple(vec![Some(0)]), 1)]).unwrap()
        );
        assert_eq!(gs[1], Relation::from_rows(s, [(Tuple(vec![Some(1)]), 1)]).unwrap());
    }

    #[test]
    fn limit_is_distinguishable_from_exhaustion() {
        let mut b = RelationBuilder::new(["A", "B"]).unwrap();
        b.row_marked(&["*", "*"], 1).unwrap();
        b.declare_domain("A", ["0", "1"]).unwrap();
        b.declare_domain("B", ["0", "1"]).unwrap();
        let r = b.build().unwrap();

        let mut it = r.groundings(Some(3));
        assert_eq!(it.by_ref().count(), 3);
        assert!(it.is_truncated());

        let mut it = r.groundings(Some(4));
        assert_eq!(it.by_ref().count(), 4);
        assert!(!it.is_truncated());
    }

    #[test]
    fn complete_relation_grounds_to_itself() {
        let s = Schema::uniform(["A"], 2).unwrap();
        let r = Relation::from_rows(s, [(Tuple(vec![Some(1)]), 3)]).unwrap();
        let gs: Vec<_> = r.groundings(None).collect();
        assert_eq!(gs, vec![r]);
    }
}
