#include "leja/run_config.hpp"

#include <fstream>

namespace leja {

using nlohmann::json;

namespace {

Complex complex_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string(what) + ": expected [re, im]");
    const Complex z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ConfigError(std::string(what) + ": non-finite coordinate");
    return z;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config field '") + key + "' has the wrong type");
    }
}

}  // namespace

CompactDomain domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("domain: expected an object with a 'kind' field");
    const auto kind = j.at("kind").get<std::string>();
    std::optional<CompactDomain> domain;
    try {
        if (kind == "segment") {
            domain = CompactDomain::segment(complex_from_json(j.at("a"), "segment a"),
                                            complex_from_json(j.at("b"), "segment b"));
        } else if (kind == "circle" || kind == "disk") {
            const Complex center = j.contains("center")
                                       ? complex_from_json(j.at("center"), "center")
                                       : Complex(0.0, 0.0);
            const double radius = get_or<double>(j, "radius", 1.0);
            domain = kind == "circle" ? CompactDomain::circle(center, radius)
                                      : CompactDomain::disk(center, radius);
        } else if (kind == "polygon") {
            if (!j.contains("vertices") || !j.at("vertices").is_array())
                throw ConfigError("polygon: expected a 'vertices' array");
            std::vector<Complex> vertices;
            for (const auto& v : j.at("vertices"))
                vertices.push_back(complex_from_json(v, "polygon vertex"));
            domain = CompactDomain::polygon(std::move(vertices));
        } else if (kind == "interval-union") {
            if (!j.contains("intervals") || !j.at("intervals").is_array())
                throw ConfigError("interval-union: expected an 'intervals' array");
            std::vector<std::pair<double, double>> intervals;
            for (const auto& iv : j.at("intervals")) {
                if (!iv.is_array() || iv.size() != 2)
                    throw ConfigError("interval-union: each interval is [a, b]");
                intervals.emplace_back(iv[0].get<double>(), iv[1].get<double>());
            }
            domain = CompactDomain::interval_union(std::move(intervals));
        } else {
            throw ConfigError("unknown domain kind: " + kind);
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("domain: ") + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("domain: ") + e.what());
    }

    if (j.contains("exponents")) {
        const auto& e = j.at("exponents");
        ExponentProfile profile = domain->exponents();
        profile.nikolskii = get_or<double>(e, "nikolskii", profile.nikolskii);
        profile.markov = get_or<double>(e, "markov", profile.markov);
        profile.covering = get_or<double>(e, "covering", profile.covering);
        try {
            domain->set_exponents(profile);
        } catch (const std::invalid_argument& err) {
            throw ConfigError(std::string("domain exponents: ") + err.what());
        }
    }
    return *domain;
}

json domain_to_json(const CompactDomain& domain) {
    json j;
    j["kind"] = kind_name(domain.kind());
    switch (domain.kind()) {
        case DomainKind::segment: {
            const auto& g = domain.geometry<CompactDomain::Segment>();
            j["a"] = complex_to_json(g.a);
            j["b"] = complex_to_json(g.b);
            break;
        }
        case DomainKind::circle: {
            const auto& g = domain.geometry<CompactDomain::Circle>();
            j["center"] = complex_to_json(g.center);
            j["radius"] = g.radius;
            break;
        }
        case DomainKind::disk: {
            const auto& g = domain.geometry<CompactDomain::Disk>();
            j["center"] = complex_to_json(g.center);
            j["radius"] = g.radius;
            break;
        }
        case DomainKind::polygon: {
            const auto& g = domain.geometry<CompactDomain::Polygon>();
            json vs = json::array();
            for (Complex v : g.vertices) vs.push_back(complex_to_json(v));
            j["vertices"] = vs;
            break;
        }
        case DomainKind::interval_union: {
            const auto& g = domain.geometry<CompactDomain::IntervalUnion>();
            json iv = json::array();
            for (auto [a, b] : g.intervals) iv.push_back(json::array({a, b}));
            j["intervals"] = iv;
            break;
        }
    }
    j["exponents"] = {{"nikolskii", domain.exponents().nikolskii},
                      {"markov", domain.exponents().markov},
                      {"covering", domain.exponents().covering}};
    return j;
}

const CompactDomain& RunConfig::domain_ref() const {
    if (!domain) throw ConfigError("config is missing the 'domain' object");
    return *domain;
}

GeneratorConfig RunConfig::generator_config(std::uint64_t seed) const {
    GeneratorConfig g;
    g.method = method;
    g.n_target = n_target;
    g.epsilon = epsilon;
    g.seed = seed;
    g.grid_size = grids.generation;
    g.alpha_override = alpha_override;
    g.mesh_multiplier = mesh_multiplier;
    g.max_attempts = max_attempts;
    return g;
}

RunConfig parse_run_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    RunConfig config;
    if (j.contains("domain")) config.domain = domain_from_json(j.at("domain"));

    try {
        if (j.contains("method")) config.method = method_from_name(j.at("method").get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    config.n_target = get_or<std::size_t>(j, "n", config.n_target);
    config.epsilon = get_or<double>(j, "epsilon", config.epsilon);
    if (j.contains("alpha")) config.alpha_override = j.at("alpha").get<double>();
    config.ensemble = get_or<std::size_t>(j, "ensemble", config.ensemble);
    config.function_name = get_or<std::string>(j, "function", config.function_name);
    config.mesh_multiplier = get_or<double>(j, "mesh_multiplier", config.mesh_multiplier);
    config.histogram_bins = get_or<std::size_t>(j, "histogram_bins", config.histogram_bins);
    config.max_attempts = get_or<std::size_t>(j, "max_attempts", config.max_attempts);

    if (j.contains("grids")) {
        const auto& g = j.at("grids");
        config.grids.generation = get_or<std::size_t>(g, "generation", config.grids.generation);
        config.grids.eval = get_or<std::size_t>(g, "eval", config.grids.eval);
        config.grids.lebesgue = get_or<std::size_t>(g, "lebesgue", config.grids.lebesgue);
    }
    if (j.contains("lebesgue_fit_range")) {
        const auto& r = j.at("lebesgue_fit_range");
        if (!r.is_array() || r.size() != 2)
            throw ConfigError("lebesgue_fit_range: expected [n_min, n_max]");
        config.fit_lo = r[0].get<std::size_t>();
        config.fit_hi = r[1].get<std::size_t>();
    }

    if (j.contains("seeds")) {
        config.seeds.clear();
        for (const auto& s : j.at("seeds")) config.seeds.push_back(s.get<std::uint64_t>());
        if (config.seeds.empty()) throw ConfigError("'seeds' must not be empty");
    } else {
        const auto seed = get_or<std::uint64_t>(j, "seed", 0);
        config.seeds.assign(1, seed);
    }
    // An ensemble larger than the explicit seed list extends it sequentially.
    while (config.seeds.size() < config.ensemble)
        config.seeds.push_back(config.seeds.back() + 1);

    if (config.n_target < 1) throw ConfigError("'n' must be >= 1");
    if (!(config.epsilon > 0.0)) throw ConfigError("'epsilon' must be positive");
    if (config.ensemble < 1) throw ConfigError("'ensemble' must be >= 1");
    if (config.grids.generation < 16 || config.grids.eval < 16 || config.grids.lebesgue < 16)
        throw ConfigError("grid sizes must be >= 16");
    if (config.fit_lo + 1 >= config.fit_hi) throw ConfigError("lebesgue_fit_range must satisfy n_min < n_max");
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }
    return parse_run_config(j);
}

json run_config_to_json(const RunConfig& config) {
    json j;
    if (config.domain) j["domain"] = domain_to_json(*config.domain);
    j["method"] = method_name(config.method);
    j["n"] = config.n_target;
    j["epsilon"] = config.epsilon;
    if (config.alpha_override) j["alpha"] = *config.alpha_override;
    j["seeds"] = config.seeds;
    j["ensemble"] = config.ensemble;
    j["grids"] = {{"generation", config.grids.generation},
                  {"eval", config.grids.eval},
                  {"lebesgue", config.grids.lebesgue}};
    if (!config.function_name.empty()) j["function"] = config.function_name;
    j["mesh_multiplier"] = config.mesh_multiplier;
    j["histogram_bins"] = config.histogram_bins;
    j["lebesgue_fit_range"] = json::array({config.fit_lo, config.fit_hi});
    j["max_attempts"] = config.max_attempts;
    return j;
}

}  // namespace leja
