#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>

#include "k12/corpus.hpp"

namespace k12::corpus {

// Stable id for a document, derived from its URL (or local path).
std::string url_doc_id(const std::string& url);

// Cached HTTP client for source acquisition. Responses are cached on disk
// keyed by a hash of the URL; cache hits never touch the network. Requests
// to the same host are serialized and spaced at least min_interval_ms apart.
class FetchClient {
public:
    FetchClient(std::string cache_dir, int64_t min_interval_ms);

    // Returns the document body plus kind derived from the content type
    // (text/html -> html, other text/* -> text). The caller fills in
    // source/subjects. Throws NetworkError on transport or HTTP failure and
    // FormatError for non-text content or malformed URLs.
    RawDocument fetch(const std::string& url);

    int64_t network_calls() const { return network_calls_; }

private:
    struct HostState {
        std::mutex mu;
        std::chrono::steady_clock::time_point last;
        bool has_last = false;
    };

    std::string cache_path(const std::string& url) const;
    HostState& host_state(const std::string& host);

    std::string cache_dir_;
    int64_t min_interval_ms_;
    std::mutex map_mu_;
    std::map<std::string, HostState> hosts_;
    int64_t network_calls_ = 0;
};

} // namespace k12::corpus
