#include "extraction/json_io.hpp"

namespace extraction {

namespace {

double need_num(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ValidationError("BadInput", std::string("missing or non-numeric key: ") + key);
    return j.at(key).get<double>();
}

json mix_to_json(const JumpMix& mix) {
    json arr = json::array();
    for (std::size_t k = 0; k < mix.order(); ++k)
        arr.push_back({{"w", mix.weights[k]}, {"beta", mix.rates[k]}});
    return arr;
}

JumpMix mix_from_json(const json& j, const char* key) {
    JumpMix mix;
    if (!j.contains(key)) return mix;
    const json& arr = j.at(key);
    if (!arr.is_array())
        throw ValidationError("BadInput", std::string(key) + " must be an array");
    for (const json& e : arr) {
        mix.weights.push_back(need_num(e, "w"));
        mix.rates.push_back(need_num(e, "beta"));
    }
    return mix;
}

std::vector<double> vec_from_json(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw ValidationError("BadInput", std::string("missing array key: ") + key);
    return j.at(key).get<std::vector<double>>();
}

json trends_to_json(const std::vector<Trend>& ts) {
    json arr = json::array();
    for (Trend t : ts) arr.push_back(trend_name(t));
    return arr;
}

}  // namespace

json params_to_json(const ModelParams& p) {
    return {{"mu", p.mu},           {"sigma", p.sigma},
            {"rho", p.rho},         {"alpha", p.alpha},
            {"c", p.c},             {"lambda_n", p.lambda_n},
            {"lambda_p", p.lambda_p}, {"mix_n", mix_to_json(p.mix_n)},
            {"mix_p", mix_to_json(p.mix_p)}};
}

ModelParams params_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("BadInput", "params must be a JSON object");
    ModelParams p;
    p.mu = need_num(j, "mu");
    p.sigma = need_num(j, "sigma");
    p.rho = need_num(j, "rho");
    p.alpha = need_num(j, "alpha");
    p.c = need_num(j, "c");
    p.lambda_n = j.value("lambda_n", 0.0);
    p.lambda_p = j.value("lambda_p", 0.0);
    p.mix_n = mix_from_json(j, "mix_n");
    p.mix_p = mix_from_json(j, "mix_p");
    validate(p);
    return p;
}

json solution_to_json(const BarrierSolution& s) {
    return {{"params", params_to_json(s.params)},
            {"bstar", s.bstar},
            {"K", s.K},
            {"roots",
             {{"pos", s.roots.pos},
              {"neg", s.roots.neg},
              {"pos_residual", s.roots.pos_residual},
              {"neg_residual", s.roots.neg_residual}}},
            {"Rn", s.Rn},
            {"Mn", s.Mn},
            {"Xi", s.Xi_n},
            {"identity_residuals",
             {{"cond1K", s.residuals.cond1K},
              {"cond2K", s.residuals.cond2K},
              {"cond3K", s.residuals.cond3K},
              {"equ1", s.residuals.equ1},
              {"equ2", s.residuals.equ2},
              {"equ3", s.residuals.equ3},
              {"sum_r2K", s.residuals.sum_r2K}}}};
}

BarrierSolution solution_from_json(const json& j) {
    BarrierSolution s;
    if (!j.contains("params"))
        throw ValidationError("BadInput", "solution JSON missing params");
    s.params = params_from_json(j.at("params"));
    s.bstar = need_num(j, "bstar");
    s.K = vec_from_json(j, "K");
    const json& r = j.at("roots");
    s.roots.pos = vec_from_json(r, "pos");
    s.roots.neg = vec_from_json(r, "neg");
    s.roots.pos_residual = r.value("pos_residual", std::vector<double>{});
    s.roots.neg_residual = r.value("neg_residual", std::vector<double>{});
    s.Rn = need_num(j, "Rn");
    s.Mn = vec_from_json(j, "Mn");
    s.Xi_n = vec_from_json(j, "Xi");
    const json& ir = j.value("identity_residuals", json::object());
    s.residuals.cond1K = ir.value("cond1K", 0.0);
    s.residuals.cond2K = ir.value("cond2K", 0.0);
    s.residuals.cond3K = ir.value("cond3K", 0.0);
    s.residuals.equ1 = ir.value("equ1", 0.0);
    s.residuals.equ2 = ir.value("equ2", 0.0);
    s.residuals.equ3 = ir.value("equ3", 0.0);
    s.residuals.sum_r2K = ir.value("sum_r2K", 0.0);
    return s;
}

json estimate_to_json(const SimEstimate& e) {
    return {{"mean", e.mean},
            {"stderr", e.stderr_},
            {"paths", e.paths},
            {"truncated_fraction", e.truncated_fraction},
            {"config",
             {{"dt", e.config.dt},
              {"horizon", e.config.horizon},
              {"seed", e.config.seed},
              {"paths", e.config.paths},
              {"threads", e.config.threads}}}};
}

json stop_estimate_to_json(const StopEstimate& e) {
    json j = estimate_to_json(e.est);
    j["overshoot_fraction"] = e.overshoot_fraction;
    return j;
}

json hjb_report_to_json(const HjbReport& r) {
    return {{"max_Tv_waiting", r.max_Tv_waiting},
            {"max_abs_Tv_selling", r.max_abs_Tv_selling},
            {"h1_at_bstar", r.h1_at_bstar},
            {"max_H1", r.max_H1},
            {"max_H2", r.max_H2},
            {"max_abs_Dv_waiting", r.max_abs_Dv_waiting},
            {"max_abs_gamma_u_below", r.max_abs_gamma_u_below},
            {"gamma_u_at_bstar", r.gamma_u_at_bstar},
            {"max_quad_mismatch", r.max_quad_mismatch},
            {"h2_sigma_squared", r.h2_sigma_squared},
            {"h2_variant_mismatch", r.h2_variant_mismatch}};
}

json sweep_report_to_json(const SweepReport& r) {
    json probes = json::array();
    for (const StatePoint& pt : r.probes) probes.push_back({{"x", pt.x}, {"y", pt.y}});
    return {{"parameter", r.parameter},
            {"grid", r.grid},
            {"bstar", r.bstar},
            {"values", r.values},
            {"probes", probes},
            {"bstar_trend", trend_name(r.bstar_trend)},
            {"value_trends", trends_to_json(r.value_trends)},
            {"asserted", r.asserted},
            {"trend_holds", r.trend_holds},
            {"note", r.note}};
}

json root_sweep_report_to_json(const RootSweepReport& r) {
    return {{"parameter", r.parameter},
            {"grid", r.grid},
            {"pos", r.pos},
            {"neg", r.neg},
            {"pos_trends", trends_to_json(r.pos_trends)},
            {"neg_trends", trends_to_json(r.neg_trends)},
            {"asserted_ok", r.asserted_ok},
            {"split_index", r.split_index},
            {"note", r.note}};
}

}  // namespace extraction
