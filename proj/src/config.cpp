#include "repcut/config.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace repcut {

namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
    if (!obj.is_object()) throw InvalidArgument(path.empty() ? "config" : path, "must be an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw InvalidArgument(path.empty() ? key : path + "." + key, "unknown field");
    }
}

double number(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw InvalidArgument(path + "." + key, "must be a number");
    return v.get<double>();
}

int integer(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw InvalidArgument(path + "." + key, "must be an integer");
    return v.get<int>();
}

bool boolean(const json& obj, const std::string& path, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw InvalidArgument(path + "." + key, "must be true or false");
    return v.get<bool>();
}

const json& section(const json& root, const char* key) {
    static const json empty = json::object();
    return root.contains(key) ? root.at(key) : empty;
}

PayoffFamily read_family(const json& fam) {
    const std::string path = "payoff.family";
    std::string type = "power";
    if (fam.contains("type")) {
        if (!fam.at("type").is_string()) throw InvalidArgument(path + ".type", "must be a string");
        type = fam.at("type").get<std::string>();
    }
    if (type == "power") {
        reject_unknown(fam, path, {"type", "k"});
        return PowerFamily{number(fam, path, "k", 2.0)};
    }
    if (type == "loss_averse") {
        reject_unknown(fam, path, {"type", "v0", "bench_pi", "slope_b", "loss_aversion", "kappa_plus", "kappa_minus"});
        LossAverseFamily f;
        f.v0 = number(fam, path, "v0", f.v0);
        f.bench_pi = number(fam, path, "bench_pi", f.bench_pi);
        f.slope_b = number(fam, path, "slope_b", f.slope_b);
        f.loss_aversion = number(fam, path, "loss_aversion", f.loss_aversion);
        f.kappa_plus = number(fam, path, "kappa_plus", f.kappa_plus);
        f.kappa_minus = number(fam, path, "kappa_minus", f.kappa_minus);
        return f;
    }
    throw InvalidArgument(path + ".type", "must be \"power\" or \"loss_averse\"");
}

CommitteeSpec read_committee(const json& c, std::size_t& member) {
    reject_unknown(c, "committee", {"n", "k", "member", "member_yes_probs"});
    CommitteeSpec spec;
    spec.n = integer(c, "committee", "n", 1);
    spec.k = integer(c, "committee", "k", 1);
    const int m = integer(c, "committee", "member", 0);
    detail::require(m >= 0 && m < spec.n, "committee.member", "must index a member");
    member = static_cast<std::size_t>(m);
    spec.member_yes_probs.clear();
    if (!c.contains("member_yes_probs"))
        throw InvalidArgument("committee.member_yes_probs", "required");
    const json& probs = c.at("member_yes_probs");
    if (!probs.is_array()) throw InvalidArgument("committee.member_yes_probs", "must be an array of [q0, q1] pairs");
    for (const json& row : probs) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
            throw InvalidArgument("committee.member_yes_probs", "each entry must be [q0, q1]");
        spec.member_yes_probs.push_back({row[0].get<double>(), row[1].get<double>()});
    }
    return spec;
}

}  // namespace

void ModelConfig::validate() const {
    model.validate();
    if (committee) {
        committee->validate();
        detail::require(committee_member < static_cast<std::size_t>(committee->n), "committee.member",
                        "must index a member");
    }
}

ModelConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidArgument("config", std::string("malformed JSON: ") + e.what());
    }
    reject_unknown(root, "", {"signal", "beliefs", "payoff", "transfers", "frictions", "committee"});

    ModelConfig cfg;
    Model& m = cfg.model;

    const json& sig = section(root, "signal");
    reject_unknown(sig, "signal", {"mu0", "mu1", "sigma_h", "sigma_l"});
    m.signal = SignalModel(number(sig, "signal", "mu0", 0.0), number(sig, "signal", "mu1", 1.0),
                           number(sig, "signal", "sigma_h", 1.0), number(sig, "signal", "sigma_l", 1.7));

    const json& bel = section(root, "beliefs");
    reject_unknown(bel, "beliefs", {"pi", "alpha"});
    m.beliefs.pi = number(bel, "beliefs", "pi", m.beliefs.pi);
    m.beliefs.alpha = number(bel, "beliefs", "alpha", m.beliefs.alpha);

    const json& pay = section(root, "payoff");
    reject_unknown(pay, "payoff", {"phi", "kappa", "family"});
    m.payoff.phi = number(pay, "payoff", "phi", m.payoff.phi);
    m.payoff.kappa_scale = number(pay, "payoff", "kappa", m.payoff.kappa_scale);
    if (pay.contains("family")) m.payoff.family = read_family(pay.at("family"));

    const json& tr = section(root, "transfers");
    reject_unknown(tr, "transfers", {"beta1", "beta0", "limited_liability"});
    m.transfers.beta1 = number(tr, "transfers", "beta1", m.transfers.beta1);
    m.transfers.beta0 = number(tr, "transfers", "beta0", m.transfers.beta0);
    m.transfers.limited_liability = boolean(tr, "transfers", "limited_liability", m.transfers.limited_liability);

    const json& fr = section(root, "frictions");
    reject_unknown(fr, "frictions", {"lambda", "eps", "eta"});
    m.frictions.lambda_impl = number(fr, "frictions", "lambda", m.frictions.lambda_impl);
    m.frictions.eps_flip = number(fr, "frictions", "eps", m.frictions.eps_flip);
    m.frictions.eta_base = number(fr, "frictions", "eta", m.frictions.eta_base);

    if (root.contains("committee")) cfg.committee = read_committee(root.at("committee"), cfg.committee_member);

    cfg.validate();
    return cfg;
}

ModelConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("config", "cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const ModelConfig& cfg) {
    const Model& m = cfg.model;
    json root;
    root["signal"] = {{"mu0", m.signal.mu0()},
                      {"mu1", m.signal.mu1()},
                      {"sigma_h", m.signal.sigma_h()},
                      {"sigma_l", m.signal.sigma_l()}};
    root["beliefs"] = {{"pi", m.beliefs.pi}, {"alpha", m.beliefs.alpha}};

    json fam;
    if (const auto* p = std::get_if<PowerFamily>(&m.payoff.family)) {
        fam = {{"type", "power"}, {"k", p->exponent}};
    } else {
        const auto& l = std::get<LossAverseFamily>(m.payoff.family);
        fam = {{"type", "loss_averse"},     {"v0", l.v0},
               {"bench_pi", l.bench_pi},    {"slope_b", l.slope_b},
               {"loss_aversion", l.loss_aversion}, {"kappa_plus", l.kappa_plus},
               {"kappa_minus", l.kappa_minus}};
    }
    root["payoff"] = {{"phi", m.payoff.phi}, {"kappa", m.payoff.kappa_scale}, {"family", fam}};
    root["transfers"] = {{"beta1", m.transfers.beta1},
                         {"beta0", m.transfers.beta0},
                         {"limited_liability", m.transfers.limited_liability}};
    root["frictions"] = {{"lambda", m.frictions.lambda_impl},
                         {"eps", m.frictions.eps_flip},
                         {"eta", m.frictions.eta_base}};
    if (cfg.committee) {
        json probs = json::array();
        for (const auto& q : cfg.committee->member_yes_probs) probs.push_back({q[0], q[1]});
        root["committee"] = {{"n", cfg.committee->n},
                             {"k", cfg.committee->k},
                             {"member", cfg.committee_member},
                             {"member_yes_probs", probs}};
    }
    return root.dump(2) + "\n";
}

}  // namespace repcut
