//! Report rendering: one fixed record shape in JSON lines, CSV, or a
//! human-readable table.

use pinchcalc::classify::Classification;
use pinchcalc::InvariantReport;

pub const CSV_HEADER: &str =
    "p,q,mirrored,n,sigma,upsilon,gap,oss_lower,gamma4_predicted,gamma4_lower,gamma4_upper,classification";

/// Signed values are reported for the positive (unmirrored) knot; the
/// `mirrored` flag carries the orientation information instead.
pub fn json_line(rep: &InvariantReport, class: &Classification) -> String {
    format!(
        "{{\"p\":{},\"q\":{},\"mirrored\":{},\"n\":{},\"sigma\":{},\"upsilon\":{},\"gap\":{},\
         \"oss_lower\":{},\"gamma4_predicted\":{},\"gamma4_lower\":{},\"gamma4_upper\":{},\
         \"classification\":\"{}\"}}",
        rep.knot.p(),
        rep.knot.q(),
        rep.knot.mirrored(),
        rep.n,
        rep.sigma,
        rep.upsilon,
        rep.gap,
        rep.oss_lower,
        rep.gamma4_predicted,
        rep.gamma4_lower,
        rep.gamma4_upper,
        class.tag
    )
}

pub fn csv_line(rep: &InvariantReport, class: &Classification) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        rep.knot.p(),
        rep.knot.q(),
        rep.knot.mirrored(),
        rep.n,
        rep.sigma,
        rep.upsilon,
        rep.gap,
        rep.oss_lower,
        rep.gamma4_predicted,
        rep.gamma4_lower,
        rep.gamma4_upper,
        class.tag
    )
}

pub fn table(rep: &InvariantReport, class: &Classification) -> String {
    let mut out = String::new();
    let d = &class.detail;
    out.push_str(&format!(
        "knot:              T({},{})\n",
        rep.knot.p(),
        rep.knot.q()
    ));
    out.push_str(&format!("mirrored:          {}\n", rep.knot.mirrored()));
    out.push_str(&format!("pinch count n:     {}\n", rep.n));
    out.push_str(&format!("sigma:             {}\n", rep.sigma));
    out.push_str(&format!("upsilon:           {}\n", rep.upsilon));
    out.push_str(&format!("gap (ups - sig/2): {}\n", rep.gap));
    out.push_str(&format!("OSS lower bound:   {}\n", rep.oss_lower));
    out.push_str(&format!("gamma4 predicted:  {}\n", rep.gamma4_predicted));
    out.push_str(&format!(
        "gamma4 bounds:     [{}, {}]\n",
        rep.gamma4_lower, rep.gamma4_upper
    ));
    out.push_str(&format!("classification:    {}\n", class.tag));
    if let Some(form) = &d.moebius {
        let sign = if form.plus { '+' } else { '-' };
        out.push_str(&format!(
            "note: one pinch move; knot has the form T({}*{} {} 2, {})\n",
            form.q, form.m, sign, form.q
        ));
    }
    if let Some(exact) = d.exact_gamma4 {
        out.push_str(&format!("note: gamma4 = {exact} exactly\n"));
    }
    if let Some(upper) = d.improved_upper {
        out.push_str(&format!(
            "note: reduction passes through T(4,9), so gamma4 <= {upper} (prediction {} fails)\n",
            rep.gamma4_predicted
        ));
    }
    if let Some(known) = d.known_gamma4 {
        out.push_str(&format!("note: gamma4 = {known} is known for this knot\n"));
    }
    out
}
