#include "rbn/service.hpp"

#include <optional>
#include <vector>

#include "httplib.h"

#include "rbn/attractors.hpp"
#include "rbn/io.hpp"
#include "rbn/mapping.hpp"

namespace rbn {

namespace {

struct HttpError {
  int status;
  std::string message;
};

HttpResponse json_response(int status, const Json& doc) {
  return {status, doc.dump()};
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    const auto slash = path.find('/');
    const auto part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

Json parse_body(std::string_view body) {
  if (body.empty()) return Json::object();
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("request body is not valid JSON: ") + e.what());
  }
}

template <typename T>
T field(const Json& body, const char* key) {
  if (!body.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  }
  try {
    return body.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& body, const char* key, T fallback) {
  return body.contains(key) ? field<T>(body, key) : fallback;
}

NetState state_for(const Network& net, const Json& body) {
  NetState s = NetState::parse(field<std::string>(body, "state"));
  if (s.size() != net.n()) {
    throw std::invalid_argument("state has " + std::to_string(s.size()) +
                                " bits but the network has " + std::to_string(net.n()));
  }
  return s;
}

std::optional<std::uint64_t> seed_of(const Json& body) {
  if (body.contains("seed") && !body.at("seed").is_null()) {
    return field<std::uint64_t>(body, "seed");
  }
  return std::nullopt;
}

Json attractor_panel(const Network& net, Scheme scheme) {
  const auto attractors = enumerate_attractors(net, scheme);
  return attractors_to_json(net, scheme, attractors);
}

}  // namespace

HttpResponse Service::handle(std::string_view method, std::string_view path,
                             std::string_view body,
                             const std::map<std::string, std::string>& query) {
  try {
    const auto parts = split_path(path);
    if (parts.empty() || parts[0] != "networks" || parts.size() > 3) {
      throw HttpError{404, "no such endpoint"};
    }

    if (parts.size() == 1) {
      if (method != "POST") throw HttpError{405, "use POST to create a network"};
      const Json request = parse_body(body);
      Network net = request.contains("network")
                        ? network_from_json(request.at("network"))
                        : [&] {
                            RandomStream rng(field<std::uint64_t>(request, "seed"));
                            GenerateOptions opts;
                            if (field_or<bool>(request, "random_q", false)) {
                              opts.translations = TranslationMode::uniform;
                            }
                            return generate_network(
                                field<std::size_t>(request, "n"),
                                field<std::size_t>(request, "k"),
                                field_or<std::uint32_t>(request, "p_max", 1), rng, opts);
                          }();
      std::lock_guard lock(mutex_);
      const std::string id = "net-" + std::to_string(next_id_++);
      auto [it, inserted] = networks_.emplace(id, std::move(net));
      return json_response(201, Json{{"id", id}, {"network", network_to_json(it->second)}});
    }

    const std::string id(parts[1]);
    std::optional<Network> net;
    {
      std::lock_guard lock(mutex_);
      auto it = networks_.find(id);
      if (it == networks_.end()) throw HttpError{404, "unknown network id '" + id + "'"};
      net = it->second;
    }

    if (parts.size() == 2) {
      if (method == "GET") {
        return json_response(200, Json{{"id", id}, {"network", network_to_json(*net)}});
      }
      if (method == "PUT") {
        const Json request = parse_body(body);
        Network updated = network_from_json(
            request.contains("network") ? request.at("network") : request);
        std::lock_guard lock(mutex_);
        networks_.insert_or_assign(id, updated);
        return json_response(200, Json{{"id", id}, {"network", network_to_json(updated)}});
      }
      throw HttpError{405, "use GET or PUT on a network"};
    }

    const std::string_view action = parts[2];
    if (action == "step" || action == "run") {
      if (method != "POST") throw HttpError{405, "use POST"};
      const Json request = parse_body(body);
      const Scheme scheme = parse_scheme(field<std::string>(request, "scheme"));
      const NetState s = state_for(*net, request);
      const auto seed = seed_of(request);
      const std::uint64_t t = field_or<std::uint64_t>(request, "t", 0);
      if (action == "step") {
        const NetState next = seeded_step(*net, s, scheme, t, seed);
        return json_response(200, Json{{"state", next.to_string()}, {"t", t + 1}});
      }
      const auto steps = field<std::uint64_t>(request, "steps");
      if (steps > 100000) throw SizeLimitError("run is limited to 100000 steps");
      Json states = Json::array();
      for (const NetState& x : seeded_trajectory(*net, s, scheme, steps, seed, t)) {
        states.push_back(x.to_string());
      }
      return json_response(200, Json{{"trajectory", std::move(states)}, {"t", t + steps}});
    }

    if (action == "attractors") {
      if (method != "GET") throw HttpError{405, "use GET"};
      const auto it = query.find("scheme");
      if (it != query.end()) {
        return json_response(200, attractor_panel(*net, parse_scheme(it->second)));
      }
      Json all = Json::object();
      for (Scheme scheme : kAllSchemes) {
        all[std::string(label(scheme))] = attractor_panel(*net, scheme);
      }
      return json_response(200, Json{{"schemes", std::move(all)}});
    }

    if (action == "map") {
      if (method != "POST") throw HttpError{405, "use POST"};
      const Json request = parse_body(body);
      const Scheme scheme = parse_scheme(field<std::string>(request, "scheme"));
      const MappingResult result = map_to_crbn(*net, scheme);
      Json doc = mapping_to_json(result);
      Json rows = Json::array();
      for (const auto& [from, to] : crbn_transition_table(result.mapped)) {
        rows.push_back(Json{{"from", from.to_string()}, {"to", to.to_string()}});
      }
      doc["transitions"] = std::move(rows);
      return json_response(200, doc);
    }

    throw HttpError{404, "no such endpoint"};
  } catch (const HttpError& e) {
    return json_response(e.status, Json{{"error", e.message}});
  } catch (const SizeLimitError& e) {
    return json_response(413, Json{{"error", e.what()}});
  } catch (const FormatError& e) {
    return json_response(400, Json{{"error", e.what()}});
  } catch (const std::invalid_argument& e) {
    return json_response(400, Json{{"error", e.what()}});
  } catch (const std::out_of_range& e) {
    return json_response(400, Json{{"error", e.what()}});
  }
}

struct HttpFrontend::Impl {
  httplib::Server server;
};

HttpFrontend::HttpFrontend(Service& service) : impl_(std::make_unique<Impl>()) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [key, value] : req.params) query.emplace(key, value);
    const HttpResponse out = service.handle(req.method, req.path, req.body, query);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  impl_->server.Get(".*", forward);
  impl_->server.Post(".*", forward);
  impl_->server.Put(".*", forward);
}

HttpFrontend::~HttpFrontend() = default;

int HttpFrontend::bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

int HttpFrontend::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpFrontend::listen() { return impl_->server.listen_after_bind(); }

void HttpFrontend::stop() { impl_->server.stop(); }

void serve(Service& service, const std::string& host, int port) {
  HttpFrontend frontend(service);
  if (frontend.bind(host, port) < 0) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
  frontend.listen();
}

}  // namespace rbn
