#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "cskb/classify.hpp"
#include "cskb/error.hpp"

namespace cskb {
namespace {

// In-process labeler: the handler decides the response for each request.
class MockService {
 public:
  using Handler = std::function<void(const nlohmann::json&, httplib::Response&)>;

  explicit MockService(Handler h) : handler_(std::move(h)) {
    server_.Post("/label", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      handler_(nlohmann::json::parse(req.body), res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockService() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int requests() const { return requests_; }

 private:
  httplib::Server server_;
  Handler handler_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
};

// Labels by content: "bad" -> negative, "good" -> positive, "meh" -> other.
void label_by_word(const nlohmann::json& body, httplib::Response& res) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& t : body["texts"]) {
    const auto s = t.get<std::string>();
    labels.push_back(s.find("bad") != std::string::npos    ? "negative"
                     : s.find("good") != std::string::npos ? "positive"
                     : s.find("meh") != std::string::npos  ? "other"
                                                           : "neutral");
  }
  res.set_content(nlohmann::json{{"labels", labels}}.dump(), "application/json");
}

RemoteOptions options_for(const MockService& svc) {
  RemoteOptions o;
  o.endpoint = svc.endpoint();
  o.batch_size = 100;
  o.max_in_flight = 2;
  o.retries = 2;
  o.timeout = std::chrono::milliseconds(5000);
  return o;
}

TEST(Remote, ChunksAndAlignment) {
  MockService svc(label_by_word);
  std::vector<std::string> texts;
  for (int i = 0; i < 250; ++i) texts.push_back(i % 4 == 0 ? "bad " : i % 4 == 1 ? "good" : i % 4 == 2 ? "meh" : "x");
  const auto out = remote_label(texts, options_for(svc));
  EXPECT_EQ(svc.requests(), 3);
  ASSERT_EQ(out.size(), 250u);
  for (int i = 0; i < 250; ++i) {
    const Polarity want = i % 4 == 0 ? Polarity::negative : i % 4 == 1 ? Polarity::positive : Polarity::neutral;
    EXPECT_EQ(out[i], want) << i;
  }
}

TEST(Remote, EmptyInputMakesNoRequests) {
  MockService svc(label_by_word);
  EXPECT_TRUE(remote_label({}, options_for(svc)).empty());
  EXPECT_EQ(svc.requests(), 0);
}

TEST(Remote, RetriesServerErrors) {
  std::atomic<int> calls{0};
  MockService svc([&](const nlohmann::json& b, httplib::Response& res) {
    if (calls++ < 2) {
      res.status = 503;
      return;
    }
    label_by_word(b, res);
  });
  const std::vector<std::string> texts{"good"};
  EXPECT_EQ(remote_label(texts, options_for(svc)), std::vector<Polarity>{Polarity::positive});
  EXPECT_EQ(svc.requests(), 3);
}

TEST(Remote, ExhaustedRetriesNameTheRequest) {
  MockService svc([](const nlohmann::json&, httplib::Response& res) { res.status = 500; });
  std::vector<std::string> texts(10, "x");
  auto o = options_for(svc);
  o.batch_size = 4;
  o.max_in_flight = 1;
  o.retries = 1;
  try {
    remote_label(texts, o);
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_EQ(e.request_index(), 0u);
    EXPECT_EQ(e.first_text(), 0u);
    EXPECT_EQ(e.last_text(), 3u);
  }
  EXPECT_EQ(svc.requests(), 2);
}

TEST(Remote, ClientErrorsAreNotRetried) {
  MockService svc([](const nlohmann::json&, httplib::Response& res) { res.status = 400; });
  const std::vector<std::string> texts{"x"};
  EXPECT_THROW(remote_label(texts, options_for(svc)), TransportError);
  EXPECT_EQ(svc.requests(), 1);
}

TEST(Remote, MalformedAndMismatchedResponses) {
  MockService garbage([](const nlohmann::json&, httplib::Response& res) { res.set_content("{oops", "text/plain"); });
  const std::vector<std::string> texts{"a", "b"};
  EXPECT_THROW(remote_label(texts, options_for(garbage)), TransportError);

  MockService short_reply([](const nlohmann::json&, httplib::Response& res) {
    res.set_content(R"({"labels":["positive"]})", "application/json");
  });
  try {
    remote_label(texts, options_for(short_reply));
    FAIL();
  } catch (const TransportError& e) {
    EXPECT_NE(std::string(e.what()).find("mismatch"), std::string::npos);
  }

  MockService unknown([](const nlohmann::json&, httplib::Response& res) {
    res.set_content(R"({"labels":["positive","sarcastic"]})", "application/json");
  });
  EXPECT_THROW(remote_label(texts, options_for(unknown)), TransportError);
}

TEST(Remote, ConnectionRefused) {
  RemoteOptions o;
  o.endpoint = "http://127.0.0.1:1";
  o.retries = 0;
  o.timeout = std::chrono::milliseconds(500);
  const std::vector<std::string> texts{"x"};
  EXPECT_THROW(remote_label(texts, o), TransportError);
}

TEST(Remote, BadConfiguration) {
  RemoteOptions o;
  o.endpoint = "ftp://host";
  const std::vector<std::string> texts{"x"};
  EXPECT_THROW(remote_label(texts, o), ConfigError);
  o.endpoint = "http://127.0.0.1:1";
  o.batch_size = 0;
  EXPECT_THROW(remote_label(texts, o), ConfigError);
}

TEST(Remote, ClassifierSendsMaskedText) {
  MockService svc([](const nlohmann::json& b, httplib::Response& res) {
    nlohmann::json labels = nlohmann::json::array();
    for (const auto& t : b["texts"]) labels.push_back(t == "XYZ are kind" ? "positive" : "negative");
    res.set_content(nlohmann::json{{"labels", labels}}.dump(), "application/json");
  });
  Statement s;
  s.text = "nurses are kind";
  s.masked_text = "XYZ are kind";
  s.id = StatementId(42);
  const RemoteClassifier c(options_for(svc));
  const auto out = c.classify(std::span(&s, 1));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].measure, Measure::regard);
  EXPECT_EQ(out[0].label, Polarity::positive);
}

}  // namespace
}  // namespace cskb
