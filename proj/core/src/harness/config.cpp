#include "dpg/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dpg/seeding.hpp"
#include "json.hpp"

namespace dpg::harness {

using nlohmann::json;

namespace {

/// Walks one JSON object, reading known keys and rejecting the rest.
class ObjectReader {
public:
    ObjectReader(const json& object, std::string path) : object_(object), path_(std::move(path)) {
        if (!object_.is_object()) throw ConfigError(where() + ": expected an object");
    }

    ~ObjectReader() noexcept(false) {
        if (std::uncaught_exceptions() > 0) return;
        for (const auto& [key, value] : object_.items()) {
            if (!seen_.count(key)) throw ConfigError(field(key) + ": unknown key");
        }
    }

    template <typename T>
    void read(const char* key, T& out) {
        seen_.insert(key);
        auto it = object_.find(key);
        if (it == object_.end()) return;
        try {
            out = it->template get<T>();
        } catch (const json::exception&) {
            throw ConfigError(field(key) + ": wrong type");
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        auto it = object_.find(key);
        return it == object_.end() ? nullptr : &*it;
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    std::string where() const { return path_.empty() ? "<root>" : path_; }

private:
    const json& object_;
    std::string path_;
    std::set<std::string> seen_;
};

numerics::Activation read_activation(ObjectReader& r, const char* key, numerics::Activation fallback) {
    std::string name(numerics::to_string(fallback));
    r.read(key, name);
    try {
        return numerics::parse_activation(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(r.field(key) + ": " + e.what());
    }
}

void read_network(const json& j, const std::string& path, ddpg::NetworkSpec& net) {
    ObjectReader r(j, path);
    r.read("actor_widths", net.actor_widths);
    r.read("critic_widths", net.critic_widths);
    net.activation = read_activation(r, "activation", net.activation);
}

json network_json(const ddpg::NetworkSpec& net) {
    return {{"actor_widths", net.actor_widths},
            {"critic_widths", net.critic_widths},
            {"activation", std::string(numerics::to_string(net.activation))}};
}

} // namespace

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) { throw ConfigError(field + ": " + why); };
    if (env.name != "obstacle_runner" && env.name != "pendulum") fail("env.name", "unknown environment '" + env.name + "'");
    if (env.frame_skip < 1) fail("env.frame_skip", "must be >= 1");
    if (env.frame_stack < 1) fail("env.frame_stack", "must be >= 1");
    try {
        env.runner.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("env.") + e.what());
    }
    if (env.pendulum.episode_cap < 1) fail("env.pendulum.episode_cap", "must be >= 1");
    try {
        ddpg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    auto check_widths = [&](const std::string& field, const std::vector<std::size_t>& widths) {
        for (auto w : widths) {
            if (w == 0) fail(field, "widths must be positive");
        }
    };
    check_widths("network.actor_widths", network.actor_widths);
    check_widths("network.critic_widths", network.critic_widths);

    const auto n = ensemble.actors;
    const auto m = ensemble.critics;
    if (n < 1) fail("ensemble.actors", "must be >= 1");
    if (m != 0 && m != 1 && m != n) {
        fail("ensemble.critics", "must be 0, 1 or the actor count (" + std::to_string(n) + "), got " +
                                     std::to_string(m));
    }
    if (m == 0 && n != 1) fail("ensemble.critics", "0 critics requires exactly 1 actor");
    if (!ensemble.members.empty() && ensemble.members.size() != n) {
        fail("ensemble.members", "need exactly one entry per actor (" + std::to_string(n) + ")");
    }
    for (std::size_t i = 0; i < ensemble.members.size(); ++i) {
        const auto prefix = "ensemble.members[" + std::to_string(i) + "]";
        check_widths(prefix + ".actor_widths", ensemble.members[i].network.actor_widths);
        check_widths(prefix + ".critic_widths", ensemble.members[i].network.critic_widths);
        if (!(ensemble.members[i].ou_sigma >= 0.0)) fail(prefix + ".ou_sigma", "must be >= 0");
    }
    if (workers.count < 1) fail("workers.count", "must be >= 1");
    if (workers.snapshot_refresh_interval < 1) fail("workers.snapshot_refresh_interval", "must be >= 1");
    if (evaluation.episodes < 1) fail("evaluation.episodes", "must be >= 1");
    if (evaluation.fall_reward_threshold && !std::isfinite(*evaluation.fall_reward_threshold)) {
        fail("evaluation.fall_reward_threshold", "must be finite");
    }
    if (!(evaluation.fall_fraction >= 0.0 && evaluation.fall_fraction <= 1.0)) {
        fail("evaluation.fall_fraction", "must be in [0, 1]");
    }
}

std::vector<MemberSpec> ExperimentConfig::resolved_members() const {
    if (!ensemble.members.empty()) return ensemble.members;
    static constexpr double kSigmaScale[] = {1.0, 0.6, 1.4, 0.8, 1.2};
    static constexpr double kWidthScale[] = {1.0, 0.75, 1.25};
    std::vector<MemberSpec> members;
    for (std::size_t i = 0; i < ensemble.actors; ++i) {
        MemberSpec member;
        member.seed = derive_seed(seed, "member-" + std::to_string(i));
        member.network = network;
        member.ou_sigma = ddpg.ou_sigma;
        if (ensemble.heterogeneous && ensemble.actors > 1) {
            member.ou_sigma *= kSigmaScale[i % 5];
            const double w = kWidthScale[i % 3];
            for (auto& width : member.network.actor_widths) {
                width = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(width * w)));
            }
            for (auto& width : member.network.critic_widths) {
                width = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(width * w)));
            }
        }
        members.push_back(std::move(member));
    }
    return members;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("<root>: malformed JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    ObjectReader r(root, "");
    r.read("seed", cfg.seed);
    r.read("label", cfg.label);
    r.read("total_steps", cfg.total_steps);
    r.read("checkpoint_interval", cfg.checkpoint_interval);

    if (const auto* env = r.child("env")) {
        ObjectReader e(*env, "env");
        e.read("name", cfg.env.name);
        e.read("frame_skip", cfg.env.frame_skip);
        e.read("frame_stack", cfg.env.frame_stack);
        if (const auto* runner = e.child("obstacle_runner")) {
            ObjectReader o(*runner, "env.obstacle_runner");
            auto& c = cfg.env.runner;
            o.read("episode_cap", c.episode_cap);
            o.read("obstacle_density", c.obstacle_density);
            o.read("posture_instability_threshold", c.posture_instability_threshold);
            o.read("unstable_collapse_steps", c.unstable_collapse_steps);
            o.read("rng_seed", c.rng_seed);
            o.read("max_speed", c.max_speed);
            o.read("lean_per_speed", c.lean_per_speed);
            o.read("brace_gain", c.brace_gain);
            o.read("gait_amplitude", c.gait_amplitude);
            o.read("posture_noise", c.posture_noise);
            o.read("sensor_horizon", c.sensor_horizon);
        }
        if (const auto* pendulum = e.child("pendulum")) {
            ObjectReader p(*pendulum, "env.pendulum");
            p.read("episode_cap", cfg.env.pendulum.episode_cap);
        }
    }
    if (const auto* net = r.child("network")) read_network(*net, "network", cfg.network);
    if (const auto* d = r.child("ddpg")) {
        ObjectReader h(*d, "ddpg");
        auto& hp = cfg.ddpg;
        h.read("gamma", hp.gamma);
        h.read("actor_lr", hp.actor_lr);
        h.read("critic_lr", hp.critic_lr);
        h.read("batch_size", hp.batch_size);
        h.read("tau", hp.tau);
        h.read("warmup_steps", hp.warmup_steps);
        h.read("buffer_capacity", hp.buffer_capacity);
        h.read("ou_theta", hp.ou_theta);
        h.read("ou_sigma", hp.ou_sigma);
        h.read("ou_dt", hp.ou_dt);
    }
    if (const auto* ens = r.child("ensemble")) {
        ObjectReader e(*ens, "ensemble");
        e.read("actors", cfg.ensemble.actors);
        e.read("critics", cfg.ensemble.critics);
        e.read("heterogeneous", cfg.ensemble.heterogeneous);
        std::string training = cfg.ensemble.training == EnsembleTraining::Joint ? "joint" : "independent";
        e.read("training", training);
        if (training == "independent") {
            cfg.ensemble.training = EnsembleTraining::Independent;
        } else if (training == "joint") {
            cfg.ensemble.training = EnsembleTraining::Joint;
        } else {
            throw ConfigError("ensemble.training: expected 'independent' or 'joint', got '" + training + "'");
        }
        if (const auto* members = e.child("members")) {
            if (!members->is_array()) throw ConfigError("ensemble.members: expected an array");
            for (std::size_t i = 0; i < members->size(); ++i) {
                const auto path = "ensemble.members[" + std::to_string(i) + "]";
                ObjectReader m((*members)[i], path);
                MemberSpec member;
                member.seed = derive_seed(cfg.seed, "member-" + std::to_string(i));
                member.network = cfg.network;
                member.ou_sigma = cfg.ddpg.ou_sigma;
                m.read("seed", member.seed);
                m.read("ou_sigma", member.ou_sigma);
                m.read("actor_widths", member.network.actor_widths);
                m.read("critic_widths", member.network.critic_widths);
                member.network.activation = read_activation(m, "activation", member.network.activation);
                cfg.ensemble.members.push_back(std::move(member));
            }
        }
    }
    if (const auto* w = r.child("workers")) {
        ObjectReader wr(*w, "workers");
        wr.read("count", cfg.workers.count);
        wr.read("snapshot_refresh_interval", cfg.workers.snapshot_refresh_interval);
    }
    if (const auto* ev = r.child("evaluation")) {
        ObjectReader er(*ev, "evaluation");
        er.read("episodes", cfg.evaluation.episodes);
        er.read("fall_fraction", cfg.evaluation.fall_fraction);
        if (const auto* t = er.child("fall_reward_threshold"); t && !t->is_null()) {
            if (!t->is_number()) throw ConfigError("evaluation.fall_reward_threshold: wrong type");
            cfg.evaluation.fall_reward_threshold = t->get<double>();
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<root>: cannot read config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
    const auto& c = cfg.env.runner;
    const auto& hp = cfg.ddpg;
    json members = json::array();
    for (const auto& m : cfg.resolved_members()) {
        auto entry = network_json(m.network);
        entry["seed"] = m.seed;
        entry["ou_sigma"] = m.ou_sigma;
        members.push_back(std::move(entry));
    }
    json root = {
        {"seed", cfg.seed},
        {"label", cfg.label},
        {"total_steps", cfg.total_steps},
        {"checkpoint_interval", cfg.checkpoint_interval},
        {"env",
         {{"name", cfg.env.name},
          {"frame_skip", cfg.env.frame_skip},
          {"frame_stack", cfg.env.frame_stack},
          {"obstacle_runner",
           {{"episode_cap", c.episode_cap},
            {"obstacle_density", c.obstacle_density},
            {"posture_instability_threshold", c.posture_instability_threshold},
            {"unstable_collapse_steps", c.unstable_collapse_steps},
            {"rng_seed", c.rng_seed},
            {"max_speed", c.max_speed},
            {"lean_per_speed", c.lean_per_speed},
            {"brace_gain", c.brace_gain},
            {"gait_amplitude", c.gait_amplitude},
            {"posture_noise", c.posture_noise},
            {"sensor_horizon", c.sensor_horizon}}},
          {"pendulum", {{"episode_cap", cfg.env.pendulum.episode_cap}}}}},
        {"network", network_json(cfg.network)},
        {"ddpg",
         {{"gamma", hp.gamma},
          {"actor_lr", hp.actor_lr},
          {"critic_lr", hp.critic_lr},
          {"batch_size", hp.batch_size},
          {"tau", hp.tau},
          {"warmup_steps", hp.warmup_steps},
          {"buffer_capacity", hp.buffer_capacity},
          {"ou_theta", hp.ou_theta},
          {"ou_sigma", hp.ou_sigma},
          {"ou_dt", hp.ou_dt}}},
        {"ensemble",
         {{"actors", cfg.ensemble.actors},
          {"critics", cfg.ensemble.critics},
          {"training", cfg.ensemble.training == EnsembleTraining::Joint ? "joint" : "independent"},
          {"heterogeneous", cfg.ensemble.heterogeneous},
          {"members", members}}},
        {"workers",
         {{"count", cfg.workers.count}, {"snapshot_refresh_interval", cfg.workers.snapshot_refresh_interval}}},
        {"evaluation",
         {{"episodes", cfg.evaluation.episodes},
          {"fall_fraction", cfg.evaluation.fall_fraction},
          {"fall_reward_threshold",
           cfg.evaluation.fall_reward_threshold ? json(*cfg.evaluation.fall_reward_threshold) : json(nullptr)}}},
    };
    return root.dump(2) + "\n";
}

} // namespace dpg::harness
