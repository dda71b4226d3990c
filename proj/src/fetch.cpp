#include "k12/fetch.hpp"

#include <filesystem>
#include <thread>

#include "httplib.h"
#include "json.hpp"

#include "k12/binio.hpp"
#include "k12/errors.hpp"
#include "k12/kvconfig.hpp"
#include "k12/log.hpp"
#include "k12/utf8.hpp"

namespace k12::corpus {

using nlohmann::json;

namespace {

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

struct ParsedUrl {
    std::string host; // includes port if present
    std::string path;
};

ParsedUrl parse_http_url(const std::string& url) {
    const std::string scheme = "http://";
    if (url.rfind(scheme, 0) != 0)
        throw FormatError("fetch: unsupported url (only http:// is handled): " + url);
    std::string rest = url.substr(scheme.size());
    auto slash = rest.find('/');
    ParsedUrl p;
    if (slash == std::string::npos) {
        p.host = rest;
        p.path = "/";
    } else {
        p.host = rest.substr(0, slash);
        p.path = rest.substr(slash);
    }
    if (p.host.empty()) throw FormatError("fetch: url has no host: " + url);
    return p;
}

DocKind kind_from_content_type(const std::string& content_type, const std::string& url) {
    std::string ct = utf8::lower_ascii(trim(content_type));
    auto semi = ct.find(';');
    if (semi != std::string::npos) ct = trim(ct.substr(0, semi));
    if (ct == "text/html" || ct == "application/xhtml+xml") return DocKind::html;
    if (ct.rfind("text/", 0) == 0 || ct.empty()) return DocKind::plain_text;
    throw FormatError("fetch: unsupported content type '" + ct + "' for " + url);
}

} // namespace

std::string url_doc_id(const std::string& url) { return hex64(fnv1a64(url)); }

FetchClient::FetchClient(std::string cache_dir, int64_t min_interval_ms)
    : cache_dir_(std::move(cache_dir)), min_interval_ms_(min_interval_ms) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir_, ec);
    if (ec) throw IoError("fetch: cannot create cache dir " + cache_dir_ + ": " + ec.message());
}

std::string FetchClient::cache_path(const std::string& url) const {
    return cache_dir_ + "/" + url_doc_id(url) + ".json";
}

FetchClient::HostState& FetchClient::host_state(const std::string& host) {
    std::lock_guard<std::mutex> lk(map_mu_);
    return hosts_[host];
}

RawDocument FetchClient::fetch(const std::string& url) {
    RawDocument doc;
    doc.doc_id = url_doc_id(url);

    std::string cpath = cache_path(url);
    if (std::filesystem::exists(cpath)) {
        json j = json::parse(binio::read_file(cpath), nullptr, false);
        if (!j.is_discarded() && j.contains("body") && j.contains("kind")) {
            doc.kind = j["kind"] == "html" ? DocKind::html : DocKind::plain_text;
            doc.body = j["body"].get<std::string>();
            return doc;
        }
        log::warn("fetch", "discarding unreadable cache entry " + cpath);
    }

    ParsedUrl p = parse_http_url(url);

    {
        HostState& hs = host_state(p.host);
        std::lock_guard<std::mutex> lk(hs.mu);
        auto now = std::chrono::steady_clock::now();
        if (hs.has_last) {
            auto due = hs.last + std::chrono::milliseconds(min_interval_ms_);
            if (now < due) std::this_thread::sleep_for(due - now);
        }

        httplib::Client client(("http://" + p.host).c_str());
        client.set_connection_timeout(10, 0);
        client.set_read_timeout(30, 0);
        auto res = client.Get(p.path.c_str());
        ++network_calls_;
        hs.last = std::chrono::steady_clock::now();
        hs.has_last = true;

        if (!res)
            throw NetworkError(p.host, "fetch: no response from " + p.host + " for " + url, true);
        if (res->status != 200)
            throw NetworkError(p.host, "fetch: HTTP " + std::to_string(res->status) + " for " + url,
                               res->status >= 500);
        doc.kind = kind_from_content_type(res->get_header_value("Content-Type"), url);
        doc.body = res->body;
    }

    json j;
    j["url"] = url;
    j["kind"] = doc.kind == DocKind::html ? "html" : "text";
    j["body"] = doc.body;
    binio::write_file(cpath, j.dump());
    return doc;
}

} // namespace k12::corpus
