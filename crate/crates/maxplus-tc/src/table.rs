// Copyright 2026 The maxplus-tc Authors
// SPDX-License-Identifier: Apache-2.0

//! Direct versus indirect superposition of two periodic flows.
//!
//! Every entry is obtained by running the superposition operators on the
//! case inputs with `τ = 1` and unit packet length, so a coefficient `c`
//! stands for `c·τ`.

use std::fmt::{self, Write as _};

use serde::Serialize;

use maxplus_tc_core::{
    superpose_indirect, superpose_lambda_nu, Error, IndirectInputs, LambdaNuModel, Rational,
};

use crate::wire::RationalJson;

/// The bound `coeff·τ·(n − offset)⁺` on the aggregate arrival time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveTerm {
    pub coeff: Rational,
    pub offset: i128,
}

impl CurveTerm {
    fn from_model(m: &LambdaNuModel) -> Result<Self, Error> {
        let nu = m.nu();
        if !nu.is_integer() {
            return Err(Error::Inconsistent(format!("burst {nu} is not an integer")));
        }
        Ok(CurveTerm {
            coeff: m.lambda().recip()?,
            offset: nu.numer(),
        })
    }
}

impl fmt::Display for CurveTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = (self.coeff.numer(), self.coeff.denom());
        match (p, q) {
            (1, 1) => f.write_str("τ")?,
            (1, q) => write!(f, "τ/{q}")?,
            (p, 1) => write!(f, "{p}τ")?,
            (p, q) => write!(f, "{p}τ/{q}")?,
        }
        write!(f, "·(n−{})⁺", self.offset)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub case_id: u8,
    /// `None` when the flows carry no packet lengths.
    pub indirect_curve: Option<CurveTerm>,
    pub direct_curve: CurveTerm,
}

struct Flow {
    period: i128,
    length: Option<i128>,
}

fn cases() -> [(u8, [Flow; 2]); 4] {
    let flow = |period, length| Flow { period, length };
    [
        (1, [flow(1, None), flow(1, None)]),
        (2, [flow(1, Some(1)), flow(1, Some(1))]),
        (3, [flow(1, Some(1)), flow(2, Some(1))]),
        (4, [flow(1, Some(1)), flow(2, Some(2))]),
    ]
}

pub fn reproduce_table1() -> Result<Vec<Table1Row>, Error> {
    cases()
        .into_iter()
        .map(|(case_id, flows)| {
            let models = flows
                .iter()
                .map(|f| LambdaNuModel::new(Rational::new(1, f.period)?, Rational::ZERO))
                .collect::<Result<Vec<_>, _>>()?;
            let direct = superpose_lambda_nu(&models)?;
            let lengths: Option<Vec<Rational>> =
                flows.iter().map(|f| f.length.map(Rational::from)).collect();
            let indirect = match lengths {
                Some(max_lengths) => {
                    let min_length = *max_lengths.iter().min().expect("two flows");
                    let inputs = IndirectInputs::new(models, max_lengths, min_length)?;
                    Some(CurveTerm::from_model(&superpose_indirect(&inputs))?)
                }
                None => None,
            };
            Ok(Table1Row {
                case_id,
                indirect_curve: indirect,
                direct_curve: CurveTerm::from_model(&direct)?,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct TermJson {
    coeff_of_tau: RationalJson,
    offset: i128,
}

#[derive(Serialize)]
struct RowJson {
    case_id: u8,
    indirect: Option<TermJson>,
    direct: TermJson,
}

fn term_json(t: &CurveTerm) -> TermJson {
    TermJson {
        coeff_of_tau: t.coeff.into(),
        offset: t.offset,
    }
}

pub fn table1_json(rows: &[Table1Row]) -> serde_json::Value {
    let rows: Vec<RowJson> = rows
        .iter()
        .map(|r| RowJson {
            case_id: r.case_id,
            indirect: r.indirect_curve.as_ref().map(term_json),
            direct: term_json(&r.direct_curve),
        })
        .collect();
    serde_json::json!({ "rows": rows })
}

pub fn table1_text(rows: &[Table1Row]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<8}{:<20}direct", "case", "indirect");
    for r in rows {
        let indirect = r
            .indirect_curve
            .map_or_else(|| "not available".to_string(), |t| t.to_string());
        let _ = writeln!(
            out,
            "{:<8}{:<20}{}",
            format!("Case {}", r.case_id),
            indirect,
            r.direct_curve
        );
    }
    out
}
