// JSON session protocol over HTTP.
//
// Request:  {"op": "new_goal"|"state"|"apply"|"undo"|"qed"|"applicable"|"load_group",
//            "session": id, "payload": {"sequent"|"tactic"|"text": ...}}
// Response: {"ok": bool, "state": {...} or null, "error": text}, plus "theorem" after qed and
//           "tactics" after applicable.

#ifndef OOTP_SERVER_HPP_
#define OOTP_SERVER_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <json.hpp>

#include "ootp/session.hpp"

namespace ootp {

// {"goals": [{"name", "sequent"}], "metas": [{"name", "value"}], "focus", "depth", "text"}.
// "text" equals the REPL rendering of the same bundle.
nlohmann::json serialize_state(const Session& s);

class SessionServer {
 public:
  // Thread safe; requests to one session are serialized, distinct sessions run concurrently.
  nlohmann::json handle(const nlohmann::json& request);
  // Raw body in, raw body out. Malformed JSON yields an error response.
  std::string handle_text(const std::string& body);

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
  };
  std::shared_ptr<Entry> find(const std::string& id, bool create);

  std::mutex table_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

// POST / carries the protocol; any other path or method is 404/405 from the transport.
class HttpService {
 public:
  explicit HttpService(SessionServer& sessions);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop(); requires a successful bind.
  bool run();
  // Blocks until run() accepts connections.
  void wait_until_ready() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Blocks serving host:port. Returns false if the port cannot be bound.
bool serve(int port, const std::string& host = "127.0.0.1");

}  // namespace ootp

#endif  // OOTP_SERVER_HPP_
