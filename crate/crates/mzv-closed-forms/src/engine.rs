use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use iterated_sums::{class_limit, q_ladder, LimitResult, SumCtx, SumSpec};
use padic_core::{Exec, Zq, ZqElem};
use serde::Serialize;

use crate::depth2::Reading;
use crate::MzvError;

/// One limit consumed by a closed form.
#[derive(Clone, Debug, Serialize)]
pub struct Ingredient {
    pub name: String,
    pub certified_digits: i32,
    /// Certificate after each ladder step from the third term on.
    pub history: Vec<i32>,
}

#[derive(Clone, Debug)]
pub struct MzvValue {
    pub value: ZqElem,
    pub certified_digits: i32,
    /// Formulas used, outermost first.
    pub provenance: Vec<String>,
    pub ingredients: Vec<Ingredient>,
}

/// Which ladder a limit is taken along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Ladder {
    /// `q^N`, class of `q`.
    Q,
    /// `M p^N`, class `pM`.
    Mp,
}

/// Shared state: the sums context, ladder budgets and the memo of limits.
pub struct Mzv {
    ctx: Arc<SumCtx>,
    budget: u64,
    mp_budget: u64,
    floor: i32,
    reading: Reading,
    memo: Mutex<HashMap<(SumSpec, Ladder), Arc<LimitResult>>>,
}

impl Mzv {
    /// `budget` bounds the `q^N` ladders.  The `Mp^N` and `p^N` ladders, which
    /// gain one digit per step instead of `f`, get `max(budget, 10^6)`.
    pub fn new(ctx: Arc<SumCtx>, budget: u64) -> Self {
        Mzv {
            ctx,
            budget,
            mp_budget: budget.max(1_000_000),
            floor: 1,
            reading: Reading::KMinusI,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_mp_budget(mut self, b: u64) -> Self {
        self.mp_budget = b;
        self
    }

    /// Reject values whose certificate falls below `floor` digits.
    pub fn with_floor(mut self, floor: i32) -> Self {
        self.floor = floor;
        self
    }

    /// Reading of the ambiguous `d_2` index used by the tail formulas.
    pub fn with_reading(mut self, r: Reading) -> Self {
        self.reading = r;
        self
    }

    pub fn ctx(&self) -> &SumCtx {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> Arc<SumCtx> {
        self.ctx.clone()
    }

    pub fn ring(&self) -> &Zq {
        self.ctx.ring()
    }

    pub fn exec(&self) -> Exec {
        self.ctx.exec()
    }

    pub fn m(&self) -> u64 {
        self.ctx.m()
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn mp_budget(&self) -> u64 {
        self.mp_budget
    }

    pub fn floor(&self) -> i32 {
        self.floor
    }

    pub fn reading(&self) -> Reading {
        self.reading
    }

    /// `underbar(i)`.
    pub fn under(&self, i: i64) -> i64 {
        self.ctx.maps().under(i) as i64
    }

    pub(crate) fn limit(&self, spec: &SumSpec, ladder: Ladder) -> Result<Arc<LimitResult>, MzvError> {
        let key = (spec.key(self.m()), ladder);
        if let Some(r) = self.memo.lock().expect("memo poisoned").get(&key) {
            return Ok(r.clone());
        }
        let r = match ladder {
            Ladder::Q => {
                let pts = q_ladder(self.ring().q(), self.budget);
                class_limit(&self.ctx, spec, self.ctx.q_class(), &pts)?
            }
            Ladder::Mp => {
                let m = self.m();
                let pts: Vec<u64> = q_ladder(self.p() as u128, self.mp_budget / m).iter().map(|x| x * m).collect();
                class_limit(&self.ctx, spec, self.ctx.pm(), &pts)?
            }
        };
        let r = Arc::new(r);
        self.memo.lock().expect("memo poisoned").insert(key, r.clone());
        Ok(r)
    }

    /// Every limit computed so far, sorted by name.
    pub fn consumed(&self) -> Vec<Ingredient> {
        let memo = self.memo.lock().expect("memo poisoned");
        let mut v: Vec<Ingredient> = memo.iter().map(|((s, l), r)| ingredient(s, *l, r)).collect();
        v.sort_by(|a, b| a.name.cmp(&b.name));
        v
    }
}

pub(crate) fn ingredient(spec: &SumSpec, ladder: Ladder, r: &LimitResult) -> Ingredient {
    let name = match ladder {
        Ladder::Q => format!("X{}", &spec.to_string()[1..]),
        Ladder::Mp => format!("lim[Mp^N] {spec}"),
    };
    Ingredient { name, certified_digits: r.certified_digits, history: r.certificate_history() }
}
