#ifndef TRIRAMSEY_SERVICE_HTTP_HPP
#define TRIRAMSEY_SERVICE_HTTP_HPP

#include <string>

#include <httplib.h>

#include "triramsey/service.hpp"

namespace triramsey {

// Routes every GET/POST on `server` into `service`. CORS is open so a browser
// client served from elsewhere can talk to it.
inline void bind_service(httplib::Server& server, Service& service) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r{req.method, req.path, {}, req.body};
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    const HttpResponse out = service.handle(r);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
  };
  server.Get(R"(/.*)", forward);
  server.Post(R"(/.*)", forward);
  server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
}

}  // namespace triramsey

#endif  // TRIRAMSEY_SERVICE_HTTP_HPP
