//! The depth-two table: `g_i[e_j e_0^(s-1) e_k e_0^(t-1)]` over distinct
//! letters `i, j, k` and `s, t >= 1` with `s + t <= bound`.

use free_series::Word;
use mzv_closed_forms::MzvQuery;

use crate::config::Job;
use crate::output::ValueOut;
use crate::CliError;

pub fn table_queries(m: u8, bound: usize) -> Vec<MzvQuery> {
    let mut out = Vec::new();
    for i in 1..=m {
        for j in (1..=m).filter(|&j| j != i) {
            for k in (1..=m).filter(|&k| k != i && k != j) {
                for total in 2..=bound {
                    for s in 1..total {
                        let t = total - s;
                        let w = Word::letter(j).concat(&Word::zeros(s - 1)).push(k).concat(&Word::zeros(t - 1));
                        out.push(MzvQuery::new(i, w));
                    }
                }
            }
        }
    }
    out
}

/// Rows in a fixed order.  Work is spread over the job's executor but the
/// output order never depends on it.
pub fn table_rows(job: &Job) -> Result<Vec<ValueOut>, CliError> {
    let z = job.engine();
    let queries = table_queries(job.m() as u8, job.opts.word_cap);
    let vals = job.exec.map(&queries, |q| z.compute(q));
    queries.iter().zip(vals).map(|(q, v)| Ok(ValueOut::new(&job.ring, q.base, &q.word, &v?))).collect()
}
