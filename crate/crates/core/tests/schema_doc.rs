use rank3kit::analyzer::{analyze, Rank3Class};
use rank3kit::catalog::builtin_entry;
use rank3kit::json::JsonReport;
use rank3kit::linear::examples::{build_affine_example, build_sum_zero_example, AffineExample};
use rank3kit::perm::DEFAULT_ENUMERATION_CAP as CAP;

const DOC: &str = include_str!("../../../docs/report-schema.md");

fn json_blocks(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current: Option<String> = None;
    for line in text.lines() {
        match (&mut current, line.trim()) {
            (None, "```json") => current = Some(String::new()),
            (Some(_), "```") => out.push(current.take().unwrap()),
            (Some(buf), _) => {
                buf.push_str(line);
                buf.push('\n');
            }
            _ => {}
        }
    }
    out
}

#[test]
fn documented_reports_parse_and_match_fresh_analyses() {
    let reports: Vec<JsonReport> = json_blocks(DOC)
        .iter()
        .map(|b| JsonReport::from_json(b).unwrap())
        .collect();
    let classes: Vec<Rank3Class> = reports.iter().map(|r| r.report.class).collect();
    assert_eq!(classes, [Rank3Class::A, Rank3Class::B, Rank3Class::C, Rank3Class::D]);

    let s6 = builtin_entry("3.S6-deg18").unwrap().unwrap().group().unwrap();
    let fresh = [
        analyze(&s6, CAP).unwrap(),
        analyze(&build_affine_example(AffineExample::G2).unwrap(), CAP).unwrap(),
        analyze(&build_sum_zero_example(2, 2, 3).unwrap(), CAP).unwrap(),
    ];
    for (doc, fresh) in reports.iter().zip(&fresh) {
        assert_eq!(&doc.report, fresh);
    }
}
