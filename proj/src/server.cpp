#include "ootp/server.hpp"

#include <httplib.h>

namespace ootp {

using nlohmann::json;

json serialize_state(const Session& s) {
  if (!s.has_goal()) return nullptr;
  const GoalBundle& b = s.proof().current();
  json goals = json::array();
  for (const auto& [name, g] : b.goals()) goals.push_back({{"name", name}, {"sequent", print_sequent(g.sequent)}});
  json metas = json::array();
  for (const auto& [m, t] : b.store().bindings()) metas.push_back({{"name", "?" + m.name}, {"value", print_term(t)}});
  return {{"goals", std::move(goals)},
          {"metas", std::move(metas)},
          {"focus", b.focus()},
          {"depth", s.proof().depth()},
          {"text", b.render()}};
}

namespace {

json error_response(const std::string& message) { return {{"ok", false}, {"state", nullptr}, {"error", message}}; }

std::string payload_field(const json& request, const char* field) {
  const auto p = request.find("payload");
  if (p == request.end() || !p->is_object()) throw CommandError("missing payload");
  const auto v = p->find(field);
  if (v == p->end() || !v->is_string()) throw CommandError(std::string("payload needs a string field '") + field + "'");
  return v->get<std::string>();
}

}  // namespace

std::shared_ptr<SessionServer::Entry> SessionServer::find(const std::string& id, bool create) {
  std::lock_guard lock(table_mutex_);
  auto it = sessions_.find(id);
  if (it != sessions_.end()) return it->second;
  if (!create) return nullptr;
  return sessions_.emplace(id, std::make_shared<Entry>()).first->second;
}

json SessionServer::handle(const json& request) {
  if (!request.is_object()) return error_response("request must be a JSON object");
  const auto op_it = request.find("op");
  const auto id_it = request.find("session");
  if (op_it == request.end() || !op_it->is_string()) return error_response("missing string field 'op'");
  if (id_it == request.end() || !id_it->is_string()) return error_response("missing string field 'session'");
  const std::string op = *op_it;
  static const char* const ops[] = {"new_goal", "state", "apply", "undo", "qed", "applicable", "load_group"};
  if (std::find(std::begin(ops), std::end(ops), op) == std::end(ops)) return error_response("unknown op '" + op + "'");

  // Only new_goal and load_group may open a session.
  const auto entry = find(*id_it, op == "new_goal" || op == "load_group");
  if (!entry) return error_response("unknown session '" + id_it->get<std::string>() + "'");
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  json out = {{"ok", true}, {"error", ""}};
  try {
    if (op == "new_goal") {
      s.new_goal(payload_field(request, "sequent"));
    } else if (op == "apply") {
      s.apply(payload_field(request, "tactic"));
    } else if (op == "undo") {
      s.undo();
    } else if (op == "qed") {
      out["theorem"] = print_sequent(s.qed().sequent());
    } else if (op == "applicable") {
      out["tactics"] = s.applicable();
    } else if (op == "load_group") {
      out["groups"] = s.load_group(payload_field(request, "text"));
    }
  } catch (const CommandError& e) {
    out["ok"] = false;
    out["error"] = e.what();
  }
  out["state"] = serialize_state(s);
  return out;
}

std::string SessionServer::handle_text(const std::string& body) {
  json request;
  try {
    request = json::parse(body);
  } catch (const json::parse_error& e) {
    return error_response(std::string("malformed JSON: ") + e.what()).dump();
  }
  return handle(request).dump();
}

struct HttpService::Impl {
  httplib::Server http;
};

HttpService::HttpService(SessionServer& sessions) : impl_(std::make_unique<Impl>()) {
  impl_->http.Post("/", [&sessions](const httplib::Request& req, httplib::Response& res) {
    res.set_content(sessions.handle_text(req.body), "application/json");
  });
}

HttpService::~HttpService() = default;

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->http.bind_to_any_port(host);
  return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool HttpService::run() { return impl_->http.listen_after_bind(); }

void HttpService::wait_until_ready() const { impl_->http.wait_until_ready(); }

void HttpService::stop() { impl_->http.stop(); }

bool serve(int port, const std::string& host) {
  SessionServer sessions;
  HttpService service(sessions);
  if (service.bind(host, port) < 0) return false;
  return service.run();
}

}  // namespace ootp
