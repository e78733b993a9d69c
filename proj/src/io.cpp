#include "lotrob/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lotrob {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw ValidationError(origin + ": " + what);
}

json parse(std::istream& in, const std::string& origin) {
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("parse error at byte ") + std::to_string(e.byte) + ": " +
                         e.what());
    }
}

std::vector<double> number_array(const json& j, const std::string& key,
                                 const std::string& origin) {
    if (!j.contains(key)) fail(origin, "missing key \"" + key + "\"");
    const json& arr = j.at(key);
    if (!arr.is_array()) fail(origin, "key \"" + key + "\" must be an array of numbers");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const json& v : arr) {
        if (!v.is_number()) fail(origin, "key \"" + key + "\" must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::ifstream open_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open file");
    return in;
}

}  // namespace

Instance read_instance_json(std::istream& in, const std::string& origin) {
    const json j = parse(in, origin);
    if (!j.is_object()) fail(origin, "instance document must be a JSON object");
    Instance inst;
    if (!j.contains("periods") || !j.at("periods").is_number_integer())
        fail(origin, "missing integer key \"periods\"");
    inst.periods = j.at("periods").get<int>();
    inst.inv_cost = number_array(j, "inventory_cost", origin);
    inst.back_cost = number_array(j, "backorder_cost", origin);
    if (j.contains("capacity") && !j.at("capacity").is_null()) {
        const json& cap = j.at("capacity");
        if (!cap.is_object()) fail(origin, "\"capacity\" must be an object");
        Capacity c;
        c.lower = number_array(cap, "lower", origin + "/capacity");
        c.upper = number_array(cap, "upper", origin + "/capacity");
        inst.capacity = std::move(c);
    }
    if (!j.contains("demands") || !j.at("demands").is_object())
        fail(origin, "missing object key \"demands\"");
    const json& dem = j.at("demands");
    const std::string type = dem.value("type", "");
    if (!dem.contains("values") || !dem.at("values").is_array())
        fail(origin, "\"demands\" needs an array key \"values\"");
    const json& values = dem.at("values");
    if (type == "crisp") {
        inst.demands = DemandModel::crisp_demands(number_array(dem, "values", origin));
    } else if (type == "interval") {
        std::vector<double> lo, hi;
        for (const json& v : values) {
            if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
                fail(origin, "interval demand entries must be [lo, hi] pairs");
            lo.push_back(v[0].get<double>());
            hi.push_back(v[1].get<double>());
        }
        inst.demands = DemandModel::interval_demands(std::move(lo), std::move(hi));
    } else if (type == "trapezoidal") {
        std::vector<TrapezoidalFuzzyInterval> fz;
        for (const json& v : values) {
            if (!v.is_array() || v.size() != 4)
                fail(origin, "trapezoidal demand entries must be [a, b, c, d] quadruples");
            for (const json& e : v)
                if (!e.is_number()) fail(origin, "trapezoidal entries must contain numbers");
            fz.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
                            v[3].get<double>());
        }
        inst.demands = DemandModel::fuzzy_demands(std::move(fz));
    } else {
        fail(origin, "\"demands.type\" must be \"crisp\", \"interval\" or \"trapezoidal\"");
    }
    inst.initial_inventory = j.value("initial_inventory", 0.0);
    inst.initial_backorder = j.value("initial_backorder", 0.0);
    try {
        inst.validate();
    } catch (const ValidationError& e) {
        fail(origin, e.what());
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    auto in = open_file(path);
    return read_instance_json(in, path);
}

void write_instance_json(const Instance& inst, std::ostream& out) {
    json j;
    j["periods"] = inst.periods;
    j["inventory_cost"] = inst.inv_cost;
    j["backorder_cost"] = inst.back_cost;
    if (inst.capacity) {
        j["capacity"] = {{"lower", inst.capacity->lower}, {"upper", inst.capacity->upper}};
    }
    json dem;
    switch (inst.demands.type) {
        case DemandType::Crisp:
            dem["type"] = "crisp";
            dem["values"] = inst.demands.crisp;
            break;
        case DemandType::Interval: {
            dem["type"] = "interval";
            json values = json::array();
            for (std::size_t t = 0; t < inst.demands.lo.size(); ++t)
                values.push_back({inst.demands.lo[t], inst.demands.hi[t]});
            dem["values"] = std::move(values);
            break;
        }
        case DemandType::Fuzzy: {
            dem["type"] = "trapezoidal";
            json values = json::array();
            for (const auto& fz : inst.demands.fuzzy)
                values.push_back({fz.a, fz.b, fz.c, fz.d});
            dem["values"] = std::move(values);
            break;
        }
    }
    j["demands"] = std::move(dem);
    j["initial_inventory"] = inst.initial_inventory;
    j["initial_backorder"] = inst.initial_backorder;
    out << j.dump(2) << '\n';
}

ProductionPlan read_plan_json(std::istream& in, const std::string& origin) {
    const json j = parse(in, origin);
    if (!j.is_object()) fail(origin, "plan document must be a JSON object");
    ProductionPlan plan{number_array(j, "values", origin)};
    for (double x : plan.values)
        if (x < 0) fail(origin, "plan values must be nonnegative");
    return plan;
}

ProductionPlan load_plan(const std::string& path) {
    auto in = open_file(path);
    return read_plan_json(in, path);
}

void write_plan_json(const ProductionPlan& plan, std::ostream& out) {
    json j;
    j["values"] = plan.values;
    out << j.dump(2) << '\n';
}

FuzzyGoal read_goal_json(std::istream& in, const std::string& origin) {
    const json j = parse(in, origin);
    if (!j.is_object() || !j.contains("c") || !j.contains("d") || !j.at("c").is_number() ||
        !j.at("d").is_number())
        fail(origin, "goal document must be an object with numeric keys \"c\" and \"d\"");
    FuzzyGoal goal{j.at("c").get<double>(), j.at("d").get<double>()};
    try {
        goal.validate();
    } catch (const ValidationError& e) {
        fail(origin, e.what());
    }
    return goal;
}

FuzzyGoal load_goal(const std::string& path) {
    auto in = open_file(path);
    return read_goal_json(in, path);
}

BenchConfig read_bench_config(std::istream& in, const std::string& origin) {
    BenchConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        if (key.empty()) continue;
        if (eq == std::string::npos)
            fail(origin, "line " + std::to_string(lineno) + ": expected key = value");
        std::string value = line.substr(eq + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t") + 1);
        try {
            if (key == "periods") cfg.gen.periods = std::stoi(value);
            else if (key == "instances") cfg.gen.instances = std::stoi(value);
            else if (key == "seed") cfg.gen.seed = std::stoull(value);
            else if (key == "fuzzy") cfg.gen.fuzzy = (value == "true" || value == "1");
            else if (key == "capacitated") cfg.gen.capacitated = (value == "true" || value == "1");
            else if (key == "workers") cfg.gen.workers = std::stoi(value);
            else if (key == "epsilon") cfg.epsilon = std::stod(value);
            else if (key == "xi") cfg.xi = std::stod(value);
            else if (key == "betas") {
                cfg.gen.goal_betas.clear();
                std::istringstream parts(value);
                std::string part;
                while (std::getline(parts, part, ','))
                    cfg.gen.goal_betas.push_back(std::stod(part));
            } else {
                fail(origin, "line " + std::to_string(lineno) + ": unknown key \"" + key + "\"");
            }
        } catch (const std::logic_error&) {
            fail(origin, "line " + std::to_string(lineno) + ": bad value for \"" + key + "\"");
        }
    }
    return cfg;
}

BenchConfig load_bench_config(const std::string& path) {
    auto in = open_file(path);
    return read_bench_config(in, path);
}

}  // namespace lotrob
