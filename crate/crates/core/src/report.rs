//! Check records and their JSON/TSV rendering.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Refused,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Refused => "refused",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub check: String,
    pub params: Value,
    pub status: Status,
    pub detail: String,
}

impl Record {
    pub fn new(check: impl Into<String>, params: Value, ok: bool, detail: impl Into<String>) -> Self {
        Record {
            check: check.into(),
            params,
            status: Status::from_bool(ok),
            detail: detail.into(),
        }
    }

    pub fn refused(check: impl Into<String>, params: Value, detail: impl Into<String>) -> Self {
        Record {
            check: check.into(),
            params,
            status: Status::Refused,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<C: Serialize> {
    pub config: C,
    pub records: Vec<Record>,
}

impl<C: Serialize> Report<C> {
    pub fn new(config: C, records: Vec<Record>) -> Self {
        Report { config, records }
    }

    pub fn all_ok(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status != Status::Ok)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// One header line, then `check  params  status  detail` per record.
    pub fn to_tsv(&self) -> Result<String> {
        let mut out = format!("# config\t{}\n", serde_json::to_string(&self.config)?);
        out.push_str("check\tparams\tstatus\tdetail\n");
        for r in &self.records {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                clean(&r.check),
                serde_json::to_string(&r.params)?,
                r.status,
                clean(&r.detail)
            ));
        }
        Ok(out)
    }
}

fn clean(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rendering() {
        let r = Report::new(
            json!({"q": 5}),
            vec![
                Record::new("a", json!({"x": 1}), true, "fine"),
                Record::new("b", json!({}), false, "two\twords"),
            ],
        );
        assert!(!r.all_ok());
        assert_eq!(r.failures().count(), 1);
        let v: Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(v["records"][1]["status"], "fail");
        let tsv = r.to_tsv().unwrap();
        assert!(tsv.lines().nth(3).unwrap().ends_with("fail\ttwo words"));
    }
}
