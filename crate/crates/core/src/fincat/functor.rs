use std::sync::Arc;

use super::{terminal, ArrowId, FinCat, FinCatError, ObjId};

/// Functor between finite categories given on objects and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    src: Arc<FinCat>,
    tgt: Arc<FinCat>,
    obj: Vec<ObjId>,
    arr: Vec<ArrowId>,
}

impl Functor {
    /// Checks that endpoints, identities and composites are preserved.
    pub fn new(src: Arc<FinCat>, tgt: Arc<FinCat>, obj: Vec<ObjId>, arr: Vec<ArrowId>) -> Result<Self, FinCatError> {
        let bad = |m: String| Err(FinCatError::BadInput(format!("functor: {m}")));
        if obj.len() != src.num_objects() || arr.len() != src.num_arrows() {
            return bad("table sizes do not match the source".into());
        }
        if obj.iter().any(|&b| b >= tgt.num_objects()) || arr.iter().any(|&g| g >= tgt.num_arrows()) {
            return bad("image out of range".into());
        }
        for f in src.arrow_ids() {
            let g = arr[f];
            if tgt.src(g) != obj[src.src(f)] || tgt.dst(g) != obj[src.dst(f)] {
                return bad(format!("{} lands between the wrong objects", src.arrow_name(f)));
            }
            for &h in src.out_arrows(src.dst(f)) {
                if arr[src.compose(h, f)] != tgt.compose(arr[h], g) {
                    return bad(format!("composite {}∘{} not preserved", src.arrow_name(h), src.arrow_name(f)));
                }
            }
        }
        if src.objects().any(|a| arr[src.id(a)] != tgt.id(obj[a])) {
            return bad("identity not preserved".into());
        }
        Ok(Functor { src, tgt, obj, arr })
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        let obj = cat.objects().collect();
        let arr = cat.arrow_ids().collect();
        Functor { src: cat.clone(), tgt: cat, obj, arr }
    }

    /// The functor from the terminal category picking out `a`.
    pub fn object(cat: Arc<FinCat>, a: ObjId) -> Self {
        let id = cat.id(a);
        Functor { src: Arc::new(terminal()), tgt: cat, obj: vec![a], arr: vec![id] }
    }

    pub fn src(&self) -> &Arc<FinCat> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<FinCat> {
        &self.tgt
    }

    pub fn on_object(&self, a: ObjId) -> ObjId {
        self.obj[a]
    }

    pub fn on_arrow(&self, f: ArrowId) -> ArrowId {
        self.arr[f]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{bg, walking_arrow, FinGroup};

    #[test]
    fn functor_checks() {
        let two = Arc::new(walking_arrow());
        let g = Arc::new(bg(&FinGroup::cyclic(2)));
        let f = two.arrow_by_name("f").unwrap();
        let mut arr = vec![0; 3];
        arr[f] = 1;
        assert!(Functor::new(two.clone(), g.clone(), vec![0, 0], arr).is_ok());
        assert!(Functor::new(g.clone(), two.clone(), vec![0], vec![two.id(0), two.id(0)]).is_ok());
        assert!(Functor::new(g, two.clone(), vec![0], vec![two.id(0), f]).is_err());
        assert_eq!(Functor::object(two.clone(), 1).on_arrow(0), two.id(1));
    }
}
