use serde::Serialize;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::setfun::Subset;

/// Default cap on the group order for conjugacy-class computation.
pub const DEFAULT_CLASS_CAP: usize = 5000;

/// Partition of a group into conjugacy classes.
///
/// Classes are ordered by their least element, and each class lists its
/// elements in ascending order, so class 0 is always `{identity}` whenever
/// the identity has index 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

impl FiniteGroup {
    pub fn conjugacy_classes(&self) -> Result<ConjugacyClasses> {
        self.conjugacy_classes_capped(DEFAULT_CLASS_CAP)
    }

    pub fn conjugacy_classes_capped(&self, cap: usize) -> Result<ConjugacyClasses> {
        let n = self.order();
        if n > cap {
            return Err(Error::CapExceeded {
                what: "conjugacy classes: group order",
                size: n,
                cap,
            });
        }
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let y = self.conjugate(x, g);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    members.push(y);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(ConjugacyClasses { classes, class_of })
    }

    /// Smallest subgroup containing `generators`.
    pub fn subgroup_closure(&self, generators: &[usize]) -> Result<Subset> {
        for &g in generators {
            self.check(g)?;
        }
        let mut members = Subset::empty(self.order());
        let mut queue = vec![self.identity()];
        members.insert(self.identity());
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in generators {
                let y = self.mult(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    queue.push(y);
                }
            }
        }
        Ok(members)
    }
}
