#include "engel/net.hpp"

#include <boost/asio.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

namespace engel {

namespace asio = boost::asio;
using asio::ip::tcp;

// ---- memory transport -------------------------------------------------------------------

struct MemoryTransport::Impl {
  std::size_t parties;
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::pair<std::size_t, std::size_t>, std::deque<Bytes>> queues;
  bool aborted = false;
  bool blocking = true;
};

MemoryTransport::MemoryTransport(std::size_t parties) : impl_(std::make_unique<Impl>()) { impl_->parties = parties; }
MemoryTransport::~MemoryTransport() = default;

void MemoryTransport::send(std::size_t from, std::size_t to, const WireFrame& frame) {
  if (from >= impl_->parties || to >= impl_->parties || from == to) throw TransportError("bad frame route");
  auto bytes = encode_frame(frame);
  {
    std::lock_guard lock(impl_->mu);
    if (impl_->aborted) throw TransportError("session aborted");
    impl_->queues[{from, to}].push_back(std::move(bytes));
  }
  impl_->cv.notify_all();
}

WireFrame MemoryTransport::recv(std::size_t at, std::size_t from) {
  std::unique_lock lock(impl_->mu);
  auto& q = impl_->queues[{from, at}];
  impl_->cv.wait(lock, [&] { return impl_->aborted || !q.empty(); });
  if (q.empty()) throw TransportError("session aborted while waiting for party " + std::to_string(from));
  Bytes bytes = std::move(q.front());
  q.pop_front();
  lock.unlock();
  std::size_t off = 0;
  auto f = decode_frame(bytes, off);
  if (!f || off != bytes.size()) throw TransportError("corrupt frame in memory queue");
  return *f;
}

void MemoryTransport::abort() {
  {
    std::lock_guard lock(impl_->mu);
    impl_->aborted = true;
  }
  impl_->cv.notify_all();
}

// ---- stream transport ---------------------------------------------------------------------

Endpoint Endpoint::parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw ParseError("endpoint must be host:port, got '" + text + "'");
  Endpoint e;
  e.host = text.substr(0, colon);
  const auto port = text.substr(colon + 1);
  if (port.empty() || port.size() > 5 || port.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("bad port in '" + text + "'");
  const auto v = std::stoul(port);
  if (v > 65535) throw ParseError("bad port in '" + text + "'");
  e.port = static_cast<std::uint16_t>(v);
  return e;
}

struct StreamTransport::Impl {
  std::size_t index = 0;
  std::size_t count = 0;
  asio::io_context io;
  tcp::acceptor acceptor{io};
  std::vector<std::unique_ptr<tcp::socket>> socks;
  std::atomic<bool> aborted{false};

  tcp::socket& peer(std::size_t j) {
    if (j >= socks.size() || !socks[j]) throw TransportError("no connection to party " + std::to_string(j));
    return *socks[j];
  }
};

namespace {

tcp::endpoint resolve(asio::io_context& io, const Endpoint& e) {
  boost::system::error_code ec;
  auto addr = asio::ip::make_address(e.host, ec);
  if (!ec) return {addr, e.port};
  tcp::resolver r(io);
  auto res = r.resolve(e.host, std::to_string(e.port), ec);
  if (ec || res.empty()) throw TransportError("cannot resolve " + e.to_string());
  return *res.begin();
}

void write_all(tcp::socket& s, const Bytes& b) {
  boost::system::error_code ec;
  asio::write(s, asio::buffer(b), ec);
  if (ec) throw TransportError("write failed: " + ec.message());
}

Bytes read_exact(tcp::socket& s, std::size_t n) {
  Bytes b(n);
  boost::system::error_code ec;
  asio::read(s, asio::buffer(b), ec);
  if (ec) throw TransportError(ec == asio::error::eof ? "peer closed the connection" : "read failed: " + ec.message());
  return b;
}

}  // namespace

StreamTransport::StreamTransport(std::size_t index, std::vector<Endpoint> endpoints) : impl_(std::make_unique<Impl>()) {
  if (index >= endpoints.size()) throw InvalidArgument("role outside the endpoint list");
  impl_->index = index;
  impl_->count = endpoints.size();
  impl_->socks.resize(endpoints.size());
  const auto ep = resolve(impl_->io, endpoints[index]);
  boost::system::error_code ec;
  impl_->acceptor.open(ep.protocol(), ec);
  if (!ec) impl_->acceptor.set_option(tcp::acceptor::reuse_address(true), ec);
  if (!ec) impl_->acceptor.bind(ep, ec);
  if (!ec) impl_->acceptor.listen(asio::socket_base::max_listen_connections, ec);
  if (ec) throw TransportError("cannot listen on " + endpoints[index].to_string() + ": " + ec.message());
}

StreamTransport::~StreamTransport() {
  boost::system::error_code ec;
  for (auto& s : impl_->socks)
    if (s) s->close(ec);
  impl_->acceptor.close(ec);
}

std::uint16_t StreamTransport::bound_port() const { return impl_->acceptor.local_endpoint().port(); }

void StreamTransport::connect(const std::vector<Endpoint>& endpoints, double timeout_seconds) {
  if (endpoints.size() != impl_->count) throw InvalidArgument("endpoint list changed size");
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_seconds);
  for (std::size_t j = 0; j < impl_->index; ++j) {
    auto sock = std::make_unique<tcp::socket>(impl_->io);
    const auto ep = resolve(impl_->io, endpoints[j]);
    for (;;) {
      boost::system::error_code ec;
      sock->connect(ep, ec);
      if (!ec) break;
      sock->close(ec);
      if (std::chrono::steady_clock::now() > deadline || impl_->aborted)
        throw TransportError("cannot connect to party " + std::to_string(j) + " at " + endpoints[j].to_string());
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    sock->set_option(tcp::no_delay(true));
    Bytes hello;
    put_u16(hello, static_cast<std::uint32_t>(impl_->index));
    write_all(*sock, hello);
    impl_->socks[j] = std::move(sock);
  }
  impl_->acceptor.non_blocking(true);
  for (std::size_t k = impl_->index + 1; k < impl_->count; ++k) {
    auto sock = std::make_unique<tcp::socket>(impl_->io);
    for (;;) {
      boost::system::error_code ec;
      impl_->acceptor.accept(*sock, ec);
      if (!ec) break;
      if (ec != asio::error::would_block && ec != asio::error::try_again)
        throw TransportError("accept failed: " + ec.message());
      if (std::chrono::steady_clock::now() > deadline || impl_->aborted)
        throw TransportError("timed out waiting for peers");
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    sock->non_blocking(false);
    sock->set_option(tcp::no_delay(true));
    const auto id_bytes = read_exact(*sock, 2);
    std::size_t off = 0;
    const std::size_t id = get_u16(id_bytes, off);
    if (id <= impl_->index || id >= impl_->count || impl_->socks[id])
      throw TransportError("unexpected peer id " + std::to_string(id));
    impl_->socks[id] = std::move(sock);
  }
}

void StreamTransport::send(std::size_t from, std::size_t to, const WireFrame& frame) {
  if (from != impl_->index) throw TransportError("stream transport sends only for its own party");
  if (impl_->aborted) throw TransportError("session aborted");
  write_all(impl_->peer(to), encode_frame(frame));
}

WireFrame StreamTransport::recv(std::size_t at, std::size_t from) {
  if (at != impl_->index) throw TransportError("stream transport receives only for its own party");
  auto& s = impl_->peer(from);
  Bytes bytes = read_exact(s, 4);
  const std::uint32_t len = (std::uint32_t(bytes[0]) << 24) | (std::uint32_t(bytes[1]) << 16) |
                            (std::uint32_t(bytes[2]) << 8) | std::uint32_t(bytes[3]);
  if (len == 0 || len > WireFrame::kMaxFrame) throw TransportError("frame length " + std::to_string(len) + " out of range");
  const auto rest = read_exact(s, len);
  bytes.insert(bytes.end(), rest.begin(), rest.end());
  std::size_t off = 0;
  try {
    auto f = decode_frame(bytes, off);
    if (!f) throw TransportError("incomplete frame");
    return *f;
  } catch (const ParseError& e) {
    throw TransportError(std::string("bad frame: ") + e.what());
  }
}

void StreamTransport::abort() {
  impl_->aborted = true;
  boost::system::error_code ec;
  for (auto& s : impl_->socks)
    if (s) s->shutdown(tcp::socket::shutdown_both, ec);
}

// ---- session driver ---------------------------------------------------------------------------

TransportKind parse_transport(const std::string& text) {
  if (text == "inproc") return TransportKind::kInProcess;
  if (text == "threads") return TransportKind::kThreads;
  if (text == "tcp") return TransportKind::kStream;
  throw InvalidArgument("unknown transport '" + text + "' (inproc, threads, tcp)");
}

std::string to_string(TransportKind k) {
  switch (k) {
    case TransportKind::kInProcess:
      return "inproc";
    case TransportKind::kThreads:
      return "threads";
    case TransportKind::kStream:
      return "tcp";
  }
  return "?";
}

Bytes encode_transcript(const std::vector<TranscriptEntry>& entries) {
  Bytes out;
  for (const auto& e : entries) {
    put_u16(out, e.round);
    put_u16(out, static_cast<std::uint32_t>(e.from));
    put_u16(out, static_cast<std::uint32_t>(e.to));
    out.insert(out.end(), e.frame.begin(), e.frame.end());
  }
  return out;
}

namespace {

struct PartyRun {
  PartyOutcome outcome;
  std::vector<TranscriptEntry> sent;
  bool failed = false;
  bool transport_failure = false;
};

void send_round(Party& party, Transport& t, unsigned round, PartyRun& run) {
  for (auto& out : party.send(round)) {
    run.sent.push_back({round, party.index(), out.to, encode_frame(out.frame)});
    t.send(party.index(), out.to, out.frame);
  }
}

void receive_round(Party& party, Transport& t, unsigned round) {
  for (auto from : party.expect(round)) party.receive(round, from, t.recv(party.index(), from));
}

void record_failure(Party& party, PartyRun& run, const std::exception& e, bool transport) {
  run.failed = true;
  run.transport_failure = transport;
  run.outcome.index = party.index();
  run.outcome.role = party.role();
  run.outcome.ok = false;
  run.outcome.error = e.what();
}

// Runs all rounds of one party; reports failure instead of throwing.
void drive(Party& party, Transport& t, PartyRun& run) {
  try {
    for (unsigned r = 0; r < party.rounds(); ++r) {
      send_round(party, t, r, run);
      receive_round(party, t, r);
    }
    run.outcome = party.finish();
    if (!run.outcome.ok) run.failed = true;
  } catch (const TransportError& e) {
    record_failure(party, run, e, true);
    t.abort();
  } catch (const std::exception& e) {
    record_failure(party, run, e, false);
    t.abort();
  }
}

SessionOutcome assemble(std::vector<PartyRun>& runs) {
  SessionOutcome out;
  out.ok = true;
  std::string transport_error;
  for (auto& r : runs) {
    out.parties.push_back(r.outcome);
    for (auto& e : r.sent) out.transcript.push_back(std::move(e));
    if (r.failed) {
      out.ok = false;
      const std::string msg = r.outcome.role + ": " + r.outcome.error;
      if (!r.transport_failure && out.error.empty()) out.error = msg;
      if (r.transport_failure && transport_error.empty()) transport_error = msg;
    }
  }
  if (!out.ok && out.error.empty()) out.error = transport_error;
  std::stable_sort(out.transcript.begin(), out.transcript.end(), [](const TranscriptEntry& a, const TranscriptEntry& b) {
    return std::tie(a.round, a.from) < std::tie(b.round, b.from);
  });
  out.transcript_bytes = encode_transcript(out.transcript);
  out.transcript_hash = to_hex(sha256(out.transcript_bytes));
  return out;
}

}  // namespace

SessionOutcome session_run(std::vector<std::unique_ptr<Party>> parties, TransportKind kind) {
  const std::size_t n = parties.size();
  std::vector<PartyRun> runs(n);
  for (std::size_t i = 0; i < n; ++i)
    if (parties[i]->index() != i) throw InvalidArgument("parties must be ordered by index");

  if (kind == TransportKind::kInProcess) {
    MemoryTransport t(n);
    unsigned rounds = 0;
    for (auto& p : parties) rounds = std::max(rounds, p->rounds());
    std::vector<char> alive(n, 1);
    bool aborted = false;
    for (unsigned r = 0; r < rounds && !aborted; ++r) {
      for (std::size_t i = 0; i < n && !aborted; ++i) {
        try {
          send_round(*parties[i], t, r, runs[i]);
        } catch (const std::exception& e) {
          record_failure(*parties[i], runs[i], e, false);
          aborted = true;
        }
      }
      for (std::size_t i = 0; i < n && !aborted; ++i) {
        try {
          receive_round(*parties[i], t, r);
        } catch (const std::exception& e) {
          record_failure(*parties[i], runs[i], e, dynamic_cast<const TransportError*>(&e) != nullptr);
          aborted = true;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (runs[i].failed) continue;
      if (aborted) {
        runs[i].outcome.index = i;
        runs[i].outcome.role = parties[i]->role();
        runs[i].outcome.error = "session aborted";
        runs[i].failed = runs[i].transport_failure = true;
        continue;
      }
      runs[i].outcome = parties[i]->finish();
      if (!runs[i].outcome.ok) runs[i].failed = true;
    }
    return assemble(runs);
  }

  if (kind == TransportKind::kThreads) {
    MemoryTransport t(n);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < n; ++i) threads.emplace_back([&, i] { drive(*parties[i], t, runs[i]); });
    for (auto& th : threads) th.join();
    return assemble(runs);
  }

  std::vector<Endpoint> eps(n);
  std::vector<std::unique_ptr<StreamTransport>> ts;
  for (std::size_t i = 0; i < n; ++i) {
    ts.push_back(std::make_unique<StreamTransport>(i, eps));
    eps[i].port = ts.back()->bound_port();
  }
  std::atomic<bool> failed{false};
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < n; ++i) {
    threads.emplace_back([&, i] {
      try {
        ts[i]->connect(eps);
      } catch (const std::exception& e) {
        record_failure(*parties[i], runs[i], e, true);
      }
      if (!runs[i].failed) drive(*parties[i], *ts[i], runs[i]);
      if (runs[i].failed && !failed.exchange(true))
        for (auto& t : ts) t->abort();
    });
  }
  for (auto& th : threads) th.join();
  return assemble(runs);
}

SessionOutcome session_run(const ProtocolConfig& cfg, TransportKind transport) {
  return session_run(make_parties(cfg), transport);
}

SessionOutcome session_run_role(const ProtocolConfig& cfg, std::size_t role, const std::vector<Endpoint>& endpoints,
                                double timeout_seconds) {
  if (endpoints.size() != cfg.party_count())
    throw InvalidArgument("need " + std::to_string(cfg.party_count()) + " endpoints for " + cfg.protocol);
  auto party = make_party(cfg, role);
  StreamTransport t(role, endpoints);
  std::vector<PartyRun> runs(1);
  try {
    t.connect(endpoints, timeout_seconds);
  } catch (const std::exception& e) {
    record_failure(*party, runs[0], e, true);
    return assemble(runs);
  }
  drive(*party, t, runs[0]);
  return assemble(runs);
}

}  // namespace engel
