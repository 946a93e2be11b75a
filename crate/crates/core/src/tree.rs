//! Finite prefixes of the tree generated by a signature.
//!
//! Reading a valid signature entry by entry runs the breadth-first
//! construction: node n receives the next `s[n]` unassigned slots as its
//! children. In the canonical *i-tree* form the root's interval starts at
//! slot 0, so the root is its own first child (the self-loop that makes the
//! father relation total); the plain tree form is the same prefix viewed
//! without that loop. Either way the expanded intervals tile `0..node_count`
//! without gaps, which is exactly what validity guarantees.

use std::fmt::Write as _;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::signature::Signature;

/// A finite, breadth-first-complete prefix of the tree of a signature:
/// every node below `expanded()` has its full child interval; the remaining
/// nodes are leaves awaiting expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePrefix {
    /// One consumed signature entry per expanded node.
    entries: Vec<usize>,
    /// Prefix sums of `entries`: expanded node n owns slots
    /// `starts[n]..starts[n+1]`.
    starts: Vec<usize>,
    node_count: usize,
    itree: bool,
}

impl TreePrefix {
    /// Runs the breadth-first construction in i-tree form until at least
    /// `node_budget` nodes exist, always completing the expansion in
    /// progress. The root is expanded even when the budget is already met
    /// by the root alone.
    pub fn generate(signature: &Signature, node_budget: usize) -> Result<Self> {
        if node_budget == 0 {
            return Err(Error::Argument("node budget must be at least 1".into()));
        }
        let source = signature.prefix(node_budget);
        let mut entries = Vec::new();
        let mut starts = vec![0usize];
        let mut node_count = 1usize; // the root exists before any expansion
        for (j, &entry) in source.iter().enumerate() {
            if j > 0 && node_count >= node_budget {
                break;
            }
            entries.push(entry);
            let total = starts[j] + entry;
            starts.push(total);
            node_count = total;
            // Node j+1 must already be among the assigned slots, otherwise
            // the next expansion step has no node to work on.
            if total <= j + 1 {
                return Err(Error::InvalidSignature { index: j });
            }
        }
        Ok(TreePrefix {
            entries,
            starts,
            node_count,
            itree: true,
        })
    }

    /// Rebuilds a prefix from stored signature entries. The entries are the
    /// same numbers in both forms (the root entry counts the self-loop
    /// slot); the flag only decides whether slot 0 belongs to the root's
    /// child interval.
    pub fn from_entries(entries: Vec<usize>, itree: bool) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Structure("no expanded nodes".into()));
        }
        let mut starts = vec![0usize];
        for &e in &entries {
            starts.push(starts.last().unwrap() + e);
        }
        if starts[1] == 0 {
            return Err(Error::Structure(
                "the root entry must count the root's own slot".into(),
            ));
        }
        for j in 0..entries.len() - 1 {
            if starts[j + 1] <= j + 1 {
                return Err(Error::Structure(format!(
                    "node {} is expanded but not assigned by an earlier interval",
                    j + 1
                )));
            }
        }
        let node_count = *starts.last().unwrap();
        Ok(TreePrefix {
            entries,
            starts,
            node_count,
            itree,
        })
    }

    /// The consumed signature entries, one per expanded node. By the degree
    /// reading, this is the signature prefix of the tree.
    pub fn signature_prefix(&self) -> &[usize] {
        &self.entries
    }

    /// Number of nodes whose children are fully generated; they are exactly
    /// the nodes `0..expanded()`.
    pub fn expanded(&self) -> usize {
        self.entries.len()
    }

    /// Total number of nodes, expanded or leaf.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn is_itree(&self) -> bool {
        self.itree
    }

    /// The children of expanded node `n`, in order. In i-tree form the
    /// root's interval includes the root itself.
    pub fn child_interval(&self, n: usize) -> Range<usize> {
        let lo = if n == 0 && !self.itree {
            1
        } else {
            self.starts[n]
        };
        lo..self.starts[n + 1]
    }

    /// The unique expanded node whose interval contains `n`. In i-tree form
    /// the root is its own father; in tree form the root has none.
    pub fn father(&self, n: usize) -> Result<usize> {
        if n >= self.node_count {
            return Err(Error::Argument(format!(
                "node {n} is outside the generated prefix"
            )));
        }
        if n == 0 {
            return if self.itree {
                Ok(0)
            } else {
                Err(Error::Argument("the root of a plain tree has no father".into()))
            };
        }
        // Last expanded node whose interval starts at or before n; empty
        // intervals share their start with the next one and are skipped.
        let p = self.starts.partition_point(|&s| s <= n) - 1;
        Ok(p)
    }

    /// The same prefix viewed without the root self-loop. Already-plain
    /// prefixes are returned unchanged.
    pub fn to_tree_form(&self) -> Self {
        TreePrefix {
            itree: false,
            ..self.clone()
        }
    }

    /// The same prefix viewed with the root self-loop. Already-i-tree
    /// prefixes are returned unchanged.
    pub fn to_itree_form(&self) -> Self {
        TreePrefix {
            itree: true,
            ..self.clone()
        }
    }

    /// DOT rendering: father -> child edges in breadth-first order, with
    /// the self-loop on node 0 when in i-tree form.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tree {\n");
        for n in 0..self.expanded() {
            for c in self.child_interval(n) {
                let _ = writeln!(out, "  {n} -> {c};");
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::fibonacci;

    fn sig321() -> Signature {
        Signature::periodic(vec![], vec![3, 2, 1]).unwrap()
    }

    #[test]
    fn generation_of_321_with_nine_nodes() {
        let t = TreePrefix::generate(&sig321(), 9).unwrap();
        assert!(t.is_itree());
        assert_eq!(t.signature_prefix(), &[3, 2, 1, 3]);
        assert_eq!(t.node_count(), 9);
        assert_eq!(t.expanded(), 4);
        assert_eq!(t.child_interval(0), 0..3);
        assert_eq!(t.child_interval(1), 3..5);
        assert_eq!(t.child_interval(2), 5..6);
        assert_eq!(t.child_interval(3), 6..9);
    }

    #[test]
    fn generation_of_the_unary_itree() {
        let s = Signature::periodic(vec![2], vec![1]).unwrap();
        let t = TreePrefix::generate(&s, 4).unwrap();
        assert_eq!(t.signature_prefix(), &[2, 1, 1]);
        assert_eq!(t.child_interval(0), 0..2);
        assert_eq!(t.child_interval(1), 2..3);
        assert_eq!(t.child_interval(2), 3..4);
        assert_eq!(t.father(3).unwrap(), 2);
    }

    #[test]
    fn rootless_unary_signature_fails_immediately() {
        let s = Signature::periodic(vec![], vec![1]).unwrap();
        for budget in [1, 7, 100] {
            assert_eq!(
                TreePrefix::generate(&s, budget).unwrap_err(),
                Error::InvalidSignature { index: 0 }
            );
        }
    }

    #[test]
    fn fathers_follow_the_intervals() {
        let t = TreePrefix::generate(&sig321(), 9).unwrap();
        assert_eq!(t.father(0).unwrap(), 0);
        assert_eq!(t.father(5).unwrap(), 2);
        assert_eq!(t.father(8).unwrap(), 3);
        assert!(t.father(9).is_err());
        let plain = t.to_tree_form();
        assert!(plain.father(0).is_err());
        assert_eq!(plain.father(5).unwrap(), 2);
    }

    #[test]
    fn empty_intervals_are_skipped_by_father() {
        let s = Signature::periodic(vec![3], vec![2, 0]).unwrap();
        let t = TreePrefix::generate(&s, 6).unwrap();
        assert_eq!(t.signature_prefix(), &[3, 2, 0, 2]);
        assert!(t.child_interval(2).is_empty());
        assert_eq!(t.father(5).unwrap(), 3);
    }

    #[test]
    fn form_conversion_only_moves_the_self_loop() {
        let t = TreePrefix::generate(&sig321(), 9).unwrap();
        let plain = t.to_tree_form();
        assert_eq!(plain.child_interval(0), 1..3);
        assert_eq!(plain.signature_prefix(), t.signature_prefix());
        assert_eq!(plain.to_itree_form(), t);
        assert_eq!(t.to_itree_form(), t);
    }

    #[test]
    fn extracted_signature_matches_the_source() {
        for s in [sig321(), fibonacci().signature()] {
            let t = TreePrefix::generate(&s, 1000).unwrap();
            assert_eq!(t.signature_prefix(), s.prefix(t.expanded()));
        }
    }

    #[test]
    fn childless_root_prefix_has_signature_one() {
        let t = TreePrefix::from_entries(vec![1], true).unwrap();
        assert_eq!(t.signature_prefix(), &[1]);
        assert_eq!(t.node_count(), 1);
        assert_eq!(t.child_interval(0), 0..1);
    }

    #[test]
    fn inconsistent_entries_are_rejected() {
        assert!(matches!(
            TreePrefix::from_entries(vec![1, 1], true),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            TreePrefix::from_entries(vec![], true),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn intervals_partition_the_nodes() {
        let t = TreePrefix::generate(&sig321(), 50).unwrap();
        let mut covered = vec![false; t.node_count()];
        for n in 0..t.expanded() {
            for c in t.child_interval(n) {
                assert!(!covered[c], "slot {c} assigned twice");
                covered[c] = true;
            }
        }
        assert!(covered.into_iter().all(|c| c));
        for n in 1..t.node_count() {
            assert!(t.father(n).unwrap() < n);
            if n + 1 < t.node_count() {
                assert!(t.father(n).unwrap() <= t.father(n + 1).unwrap());
            }
        }
    }

    #[test]
    fn dot_renders_the_root_loop_only_for_itrees() {
        let s = Signature::periodic(vec![2], vec![1]).unwrap();
        let t = TreePrefix::generate(&s, 3).unwrap();
        let dot = t.to_dot();
        assert!(dot.contains("0 -> 0;"));
        assert!(dot.contains("0 -> 1;"));
        assert!(dot.contains("1 -> 2;"));
        assert!(!t.to_tree_form().to_dot().contains("0 -> 0;"));
    }
}
