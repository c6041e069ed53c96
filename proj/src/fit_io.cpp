#include "ksortlab/fit_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ksortlab/errors.hpp"

namespace ksortlab {

namespace {

using nlohmann::json;

json vec3(const Eigen::Vector3d& v) { return json::array({v(0), v(1), v(2)}); }

Eigen::Vector3d vec3_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw schema_error("fit json: expected 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// JSON has no inf/nan; they are stored as null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string fit_to_json(const RegressionFit& fit, int indent) {
  json doc;
  doc["schema"] = kFitSchema;
  doc["label"] = fit.label;
  doc["model"] = "y = b0 + b1*n*log2(n) + b2*n";

  json design = json::array();
  for (const auto& row : fit.design) {
    design.push_back({{"n", row.n}, {"x1", row.x1}, {"x2", row.x2}, {"y", row.y}});
  }
  doc["design"] = std::move(design);

  doc["coefficients"] = {{"b0", fit.b0()}, {"b1", fit.b1()}, {"b2", fit.b2()}};
  doc["se"] = vec3(fit.se);
  doc["t"] = vec3(fit.t);
  doc["p"] = vec3(fit.p);
  doc["s"] = fit.s;
  doc["r2"] = number(fit.r2);
  doc["r2_adj"] = number(fit.r2_adj);
  doc["r2_pred"] = number(fit.r2_pred);
  doc["press"] = number(fit.press);
  doc["vif"] = number(fit.vif);

  const auto& a = fit.anova;
  doc["anova"] = {{"ss_reg", a.ss_reg}, {"ss_res", a.ss_res}, {"ss_tot", a.ss_tot},
                  {"ms_reg", a.ms_reg}, {"ms_res", a.ms_res}, {"f", number(a.f)},
                  {"p_f", number(a.p_f)},   {"df_reg", a.df_reg}, {"df_res", a.df_res},
                  {"df_tot", a.df_tot}};
  doc["seq_ss"] = {{"ss_x1_first", fit.seq_ss.ss_x1_first},
                   {"ss_x2_added", fit.seq_ss.ss_x2_added}};

  json obs = json::array();
  for (const auto& o : fit.obs_table) {
    obs.push_back({{"fit", o.fit},
                   {"se_fit", o.se_fit},
                   {"residual", o.residual},
                   {"st_resid", number(o.st_resid)},
                   {"leverage", o.leverage},
                   {"flagged", o.flagged}});
  }
  doc["observations"] = std::move(obs);
  return doc.dump(indent);
}

RegressionFit fit_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("fit json: ") + e.what());
  }

  try {
    if (doc.value("schema", "") != kFitSchema) {
      throw schema_error("fit json: missing or unknown schema tag (expected " +
                         std::string(kFitSchema) + ")");
    }
    RegressionFit fit;
    fit.label = doc.at("label").get<std::string>();
    for (const auto& row : doc.at("design")) {
      fit.design.push_back(DesignRow{row.at("n").get<std::uint64_t>(), row.at("x1").get<double>(),
                                     row.at("x2").get<double>(), row.at("y").get<double>()});
    }
    const auto& c = doc.at("coefficients");
    fit.coef = {c.at("b0").get<double>(), c.at("b1").get<double>(), c.at("b2").get<double>()};
    fit.se = vec3_from(doc.at("se"));
    fit.t = vec3_from(doc.at("t"));
    fit.p = vec3_from(doc.at("p"));
    fit.s = doc.at("s").get<double>();
    fit.r2 = number_from(doc.at("r2"));
    fit.r2_adj = number_from(doc.at("r2_adj"));
    fit.r2_pred = number_from(doc.at("r2_pred"));
    fit.press = number_from(doc.at("press"));
    fit.vif = number_from(doc.at("vif"));

    const auto& a = doc.at("anova");
    fit.anova.ss_reg = a.at("ss_reg").get<double>();
    fit.anova.ss_res = a.at("ss_res").get<double>();
    fit.anova.ss_tot = a.at("ss_tot").get<double>();
    fit.anova.ms_reg = a.at("ms_reg").get<double>();
    fit.anova.ms_res = a.at("ms_res").get<double>();
    fit.anova.f = number_from(a.at("f"));
    fit.anova.p_f = number_from(a.at("p_f"));
    fit.anova.df_reg = a.at("df_reg").get<int>();
    fit.anova.df_res = a.at("df_res").get<int>();
    fit.anova.df_tot = a.at("df_tot").get<int>();

    const auto& seq = doc.at("seq_ss");
    fit.seq_ss.ss_x1_first = seq.at("ss_x1_first").get<double>();
    fit.seq_ss.ss_x2_added = seq.at("ss_x2_added").get<double>();

    for (const auto& o : doc.at("observations")) {
      ObservationDiagnostics obs;
      obs.fit = o.at("fit").get<double>();
      obs.se_fit = o.at("se_fit").get<double>();
      obs.residual = o.at("residual").get<double>();
      obs.st_resid = number_from(o.at("st_resid"));
      obs.leverage = o.at("leverage").get<double>();
      obs.flagged = o.at("flagged").get<bool>();
      fit.obs_table.push_back(obs);
    }
    if (fit.obs_table.size() != fit.design.size()) {
      throw schema_error("fit json: observations and design differ in length");
    }
    return fit;
  } catch (const json::exception& e) {
    throw schema_error(std::string("fit json: ") + e.what());
  }
}

void save_fit_json(const std::string& path, const RegressionFit& fit) {
  std::ofstream out(path);
  if (!out) throw schema_error("cannot open '" + path + "' for writing");
  out << fit_to_json(fit) << '\n';
  if (!out) throw schema_error("write failed for '" + path + "'");
}

RegressionFit load_fit_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return fit_from_json(buf.str());
}

}  // namespace ksortlab
