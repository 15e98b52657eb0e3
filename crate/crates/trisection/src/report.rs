//! Verdict trees rendered as indented text or JSON from the same value.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};
use trisection_core::presentation::{Certificate, Evidence, HomCount};
use trisection_core::surface::MapValidationReport;
use trisection_core::trisection::{
    Fingerprint, Pushout, PushoutForm, TargetCheck, VerificationReport,
};
use trisection_core::{Verdict, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Field {
    Bool(bool),
    Int(i64),
    Text(String),
    List(Vec<String>),
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

impl From<i64> for Field {
    fn from(n: i64) -> Self {
        Field::Int(n)
    }
}

impl From<usize> for Field {
    fn from(n: usize) -> Self {
        Field::Int(n as i64)
    }
}

impl From<u32> for Field {
    fn from(n: u32) -> Self {
        Field::Int(n as i64)
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.into())
    }
}

impl From<Vec<String>> for Field {
    fn from(v: Vec<String>) -> Self {
        Field::List(v)
    }
}

/// One node of a report: a title, an optional verdict, key/value fields
/// and child nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty", serialize_with = "as_map")]
    pub fields: Vec<(String, Field)>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Report>,
}

fn as_map<S: Serializer>(fields: &[(String, Field)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(fields.iter().map(|(k, v)| (k, v)))
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), verdict: None, fields: Vec::new(), children: Vec::new() }
    }

    pub fn verdict(mut self, v: Verdict) -> Report {
        self.verdict = Some(v.as_str());
        self
    }

    pub fn field(mut self, key: &str, value: impl Into<Field>) -> Report {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub fn child(mut self, c: Report) -> Report {
        self.children.push(c);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let _ = write!(out, "{pad}{}", self.title);
        if let Some(v) = self.verdict {
            let _ = write!(out, ": {v}");
        }
        out.push('\n');
        for (k, v) in &self.fields {
            let value = match v {
                Field::Bool(b) => b.to_string(),
                Field::Int(n) => n.to_string(),
                Field::Text(s) => s.clone(),
                Field::List(items) if items.is_empty() => "(none)".into(),
                Field::List(items) => items.join(", "),
            };
            let _ = writeln!(out, "{pad}  {k}: {value}");
        }
        for c in &self.children {
            c.write_text(out, depth + 1);
        }
    }
}

fn words(ws: &[Word]) -> Vec<String> {
    ws.iter().map(Word::to_string).collect()
}

pub fn certificate(title: &str, c: &Certificate) -> Report {
    let mut r = Report::new(title).verdict(c.verdict);
    for e in &c.evidence {
        r = match e {
            Evidence::Tietze { transcript, result, images } => {
                let r = r
                    .field("tietze_moves", transcript.len())
                    .field("tietze_result", result.to_string())
                    .field("transcript", transcript.iter().map(|m| m.to_string()).collect::<Vec<_>>());
                if images.is_empty() {
                    r
                } else {
                    r.field("generator_images", words(images))
                }
            }
            Evidence::CosetEnumeration { cosets } => r.field("coset_enumeration", *cosets),
            Evidence::Obstruction(o) => r.field("obstruction", o.to_string()),
            Evidence::Exhausted { .. } => r.field("exhausted", e.to_string()),
        };
    }
    r
}

pub fn pushout(title: &str, p: &Pushout) -> Report {
    let form = match p.form {
        PushoutForm::Quotient => "quotient",
        PushoutForm::Symmetric => "symmetric",
    };
    Report::new(title)
        .field("presentation", p.presentation.to_string())
        .field("form", form)
        .field("discarded_empty_relators", p.discarded_empty)
        .field("duplicate_relators_removed", p.duplicates_removed)
}

fn map_validation(sector: usize, m: &MapValidationReport) -> Report {
    let mut r = Report::new(format!("C1 sector {sector}"))
        .verdict(m.verdict())
        .field("relator_killed", m.relator_killed)
        .field("surjective", m.surjective)
        .field("abelian_surjective", m.abelian_surjective)
        .field("cut_consistency", m.cut_consistency.iter().map(|b| b.to_string()).collect::<Vec<_>>())
        .field("cut_status", m.cut_status.as_str());
    if let Some(c) = &m.kernel_certificate {
        r = r.child(certificate("kernel quotient free of rank g", c));
    }
    r
}

pub fn verification(name: Option<&str>, v: &VerificationReport) -> Report {
    let overall = v.verdict();
    let mut r = Report::new("verification").verdict(overall);
    if let Some(n) = name {
        r = r.field("name", n);
    }
    r = r
        .field("refuted", v.refuted_conditions())
        .field("inconclusive", v.conditions_with(Verdict::Inconclusive));
    for (s, m) in v.maps.iter().enumerate() {
        r = r.child(map_validation(s + 1, m));
    }
    for f in &v.faces {
        r = r.child(
            Report::new(format!("C2 face ({},{})", f.i, f.j))
                .verdict(f.verdict())
                .child(pushout(&format!("pushout ({},{})", f.i, f.j), &f.forward))
                .child(certificate(&format!("free of rank k ({},{})", f.i, f.j), &f.forward_certificate))
                .child(pushout(&format!("pushout ({},{})", f.j, f.i), &f.backward))
                .child(certificate(&format!("free of rank k ({},{})", f.j, f.i), &f.backward_certificate)),
        );
    }
    let mut target = Report::new("C3 target").verdict(v.target.verdict()).child(pushout("triple pushout", &v.target.triple));
    target = match &v.target.check {
        TargetCheck::Absent => target.field("target", "absent"),
        TargetCheck::Trivial(c) => target.field("target", "trivial").child(certificate("trivial", c)),
        TargetCheck::Free { rank, certificate: c } => {
            target.field("target", format!("free of rank {rank}")).child(certificate("free", c))
        }
        TargetCheck::General { abelianization_agrees, hom_counts_agree, tietze_agrees } => target
            .field("target", "general")
            .field("abelianization_agrees", *abelianization_agrees)
            .field(
                "hom_counts_agree",
                hom_counts_agree
                    .iter()
                    .map(|(n, a)| format!("{n}={}", a.map_or("unknown".to_string(), |b| b.to_string())))
                    .collect::<Vec<_>>(),
            )
            .field("tietze_agrees", *tietze_agrees),
    };
    r = r.child(target);
    let red = &v.redundancy;
    r.child(
        Report::new("C4 redundancy")
            .verdict(red.verdict())
            .field("triple_abelianization", red.abelianization.0.to_string())
            .field("symmetric_abelianization", red.abelianization.1.to_string())
            .field(
                "hom_counts",
                red.hom_counts.iter().map(|(n, a, b)| format!("{n}={}/{}", count(*a), count(*b))).collect::<Vec<_>>(),
            )
            .child(pushout("symmetric triple pushout", &red.symmetric)),
    )
}

fn count(c: HomCount) -> String {
    c.exact().map_or("unknown".into(), |n| n.to_string())
}

pub fn fingerprint(name: Option<&str>, f: &Fingerprint) -> Report {
    let mut r = Report::new("fingerprint");
    if let Some(n) = name {
        r = r.field("name", n);
    }
    r.field("genus", f.genus)
        .field("k", f.k)
        .field("euler_characteristic", f.euler)
        .field("abelianization", f.abelianization.to_string())
        .field("hom_counts", f.hom_counts.iter().map(|(n, c)| format!("{n}={}", count(*c))).collect::<Vec<_>>())
        .field(
            "sector_invariant_factors",
            f.sectors
                .iter()
                .map(|d| format!("[{}]", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
                .collect::<Vec<_>>(),
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use trisection_core::trisection::{builtin, verify};
    use trisection_core::Budget;

    #[test]
    fn renderings_share_verdicts() {
        let t = builtin("cp2_10").unwrap();
        let r = verification(Some("cp2"), &verify(&t, &Budget::default()));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["verdict"], "Proved");
        assert_eq!(json["title"], "verification");
        let text = r.to_text();
        assert!(text.starts_with("verification: Proved\n"));
        assert_eq!(json["children"].as_array().unwrap().len(), 8);
        for child in json["children"].as_array().unwrap() {
            let line = format!("{}: {}", child["title"].as_str().unwrap(), child["verdict"].as_str().unwrap());
            assert!(text.contains(&line), "{line}");
        }
    }

    #[test]
    fn fields_serialize_in_order() {
        let r = Report::new("x").field("n", 3usize).field("b", true).field("l", Vec::<String>::new());
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"title":"x","fields":{"n":3,"b":true,"l":[]}}"#
        );
        assert_eq!(r.to_text(), "x\n  n: 3\n  b: true\n  l: (none)\n");
    }
}
