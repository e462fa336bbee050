#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "rbn/network.hpp"

namespace rbn {

struct HttpResponse {
  int status = 200;
  std::string body;
};

// Network store and request handling behind the laboratory's HTTP API.
// Bodies are JSON; errors come back as {"error": message}.
//
//   POST /networks                    create (network document) or
//                                     generate ({n, k, p_max, seed, random_q})
//   GET  /networks/{id}               network document
//   PUT  /networks/{id}               replace with a network document
//   POST /networks/{id}/step          {state, scheme, t, seed?}
//   POST /networks/{id}/run           {state, scheme, steps, t?, seed?}
//   GET  /networks/{id}/attractors    ?scheme=...
//   POST /networks/{id}/map           {scheme}
class Service {
 public:
  HttpResponse handle(std::string_view method, std::string_view path,
                      std::string_view body,
                      const std::map<std::string, std::string>& query = {});

 private:
  std::mutex mutex_;
  std::map<std::string, Network> networks_;
  std::uint64_t next_id_ = 1;
};

// HTTP front end forwarding every GET/POST/PUT to a Service.
class HttpFrontend {
 public:
  explicit HttpFrontend(Service& service);
  ~HttpFrontend();
  HttpFrontend(const HttpFrontend&) = delete;
  HttpFrontend& operator=(const HttpFrontend&) = delete;

  // Returns the bound port, or -1 on failure.
  int bind(const std::string& host, int port);
  int bind_any_port(const std::string& host);
  // Blocks until stop() is called from another thread.
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Serves `service` until the process is stopped.
void serve(Service& service, const std::string& host, int port);

}  // namespace rbn
