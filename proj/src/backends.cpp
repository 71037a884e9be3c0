/*
Copyright 2026 The tscomp Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "tsc/backends.hpp"

#include <dlfcn.h>

#include <initializer_list>
#include <string>

#ifdef TSC_HAVE_ZLIB
#include <zlib.h>
#endif
#ifdef TSC_HAVE_LZMA
#include <lzma.h>
#endif

namespace tsc {

namespace {

// dlopen handle for a backend that ships no headers here; the C entry
// points are resolved by name and called through typed pointers.
class SharedLibrary {
public:
    SharedLibrary(std::initializer_list<const char*> names)
    {
        for (const char* name : names) {
            handle_ = ::dlopen(name, RTLD_NOW | RTLD_LOCAL);
            if (handle_)
                return;
        }
        const char* err = ::dlerror();
        error_ = err ? err : "library not found";
    }
    ~SharedLibrary()
    {
        if (handle_)
            ::dlclose(handle_);
    }
    SharedLibrary(const SharedLibrary&) = delete;
    SharedLibrary& operator=(const SharedLibrary&) = delete;

    template <typename Fn>
    Fn symbol(const char* name)
    {
        if (!handle_)
            return nullptr;
        void* p = ::dlsym(handle_, name);
        if (!p && error_.empty())
            error_ = std::string("missing symbol ") + name;
        return reinterpret_cast<Fn>(p);
    }

    bool loaded() const noexcept { return handle_ != nullptr; }
    const std::string& error() const noexcept { return error_; }

private:
    void* handle_ = nullptr;
    std::string error_;
};

struct Zstd {
    SharedLibrary lib{"libzstd.so.1", "libzstd.so"};
    std::size_t (*compress_bound)(std::size_t) = lib.symbol<decltype(compress_bound)>("ZSTD_compressBound");
    std::size_t (*compress)(void*, std::size_t, const void*, std::size_t, int) =
        lib.symbol<decltype(compress)>("ZSTD_compress");
    std::size_t (*decompress)(void*, std::size_t, const void*, std::size_t) =
        lib.symbol<decltype(decompress)>("ZSTD_decompress");
    unsigned (*is_error)(std::size_t) = lib.symbol<decltype(is_error)>("ZSTD_isError");
    bool ok() const { return compress_bound && compress && decompress && is_error; }
};

struct Brotli {
    SharedLibrary enc_lib{"libbrotlienc.so.1", "libbrotlienc.so"};
    SharedLibrary dec_lib{"libbrotlidec.so.1", "libbrotlidec.so"};
    std::size_t (*max_size)(std::size_t) = enc_lib.symbol<decltype(max_size)>("BrotliEncoderMaxCompressedSize");
    int (*compress)(int, int, int, std::size_t, const std::uint8_t*, std::size_t*, std::uint8_t*) =
        enc_lib.symbol<decltype(compress)>("BrotliEncoderCompress");
    int (*decompress)(std::size_t, const std::uint8_t*, std::size_t*, std::uint8_t*) =
        dec_lib.symbol<decltype(decompress)>("BrotliDecoderDecompress");
    bool ok() const { return max_size && compress && decompress; }
};

struct Bzip2 {
    SharedLibrary lib{"libbz2.so.1.0", "libbz2.so.1", "libbz2.so"};
    int (*compress)(char*, unsigned*, char*, unsigned, int, int, int) =
        lib.symbol<decltype(compress)>("BZ2_bzBuffToBuffCompress");
    int (*decompress)(char*, unsigned*, char*, unsigned, int, int) =
        lib.symbol<decltype(decompress)>("BZ2_bzBuffToBuffDecompress");
    bool ok() const { return compress && decompress; }
};

struct Lz4 {
    SharedLibrary lib{"liblz4.so.1", "liblz4.so"};
    int (*bound)(int) = lib.symbol<decltype(bound)>("LZ4_compressBound");
    int (*compress)(const char*, char*, int, int) = lib.symbol<decltype(compress)>("LZ4_compress_default");
    int (*compress_hc)(const char*, char*, int, int, int) = lib.symbol<decltype(compress_hc)>("LZ4_compress_HC");
    int (*decompress)(const char*, char*, int, int) = lib.symbol<decltype(decompress)>("LZ4_decompress_safe");
    bool ok() const { return bound && compress && compress_hc && decompress; }
};

struct Snappy {
    SharedLibrary lib{"libsnappy.so.1", "libsnappy.so"};
    int (*compress)(const char*, std::size_t, char*, std::size_t*) = lib.symbol<decltype(compress)>("snappy_compress");
    int (*uncompress)(const char*, std::size_t, char*, std::size_t*) =
        lib.symbol<decltype(uncompress)>("snappy_uncompress");
    std::size_t (*max_length)(std::size_t) = lib.symbol<decltype(max_length)>("snappy_max_compressed_length");
    bool ok() const { return compress && uncompress && max_length; }
};

struct Blosc {
    SharedLibrary lib{"libblosc.so.1", "libblosc.so"};
    int (*compress)(int, int, std::size_t, std::size_t, const void*, void*, std::size_t, const char*, std::size_t, int) =
        lib.symbol<decltype(compress)>("blosc_compress_ctx");
    int (*decompress)(const void*, void*, std::size_t, int) = lib.symbol<decltype(decompress)>("blosc_decompress_ctx");
    void (*sizes)(const void*, std::size_t*, std::size_t*, std::size_t*) =
        lib.symbol<decltype(sizes)>("blosc_cbuffer_sizes");
    bool ok() const { return compress && decompress && sizes; }
};

template <typename T>
T& loaded()
{
    static T instance;
    return instance;
}

const SharedLibrary* library_of(CoderId id)
{
    switch (id) {
    case CoderId::zstd:
        return &loaded<Zstd>().lib;
    case CoderId::brotli:
        return loaded<Brotli>().enc_lib.loaded() ? &loaded<Brotli>().dec_lib : &loaded<Brotli>().enc_lib;
    case CoderId::bzip2:
        return &loaded<Bzip2>().lib;
    case CoderId::lz4:
        return &loaded<Lz4>().lib;
    case CoderId::snappy:
        return &loaded<Snappy>().lib;
    case CoderId::blosc:
        return &loaded<Blosc>().lib;
    default:
        return nullptr;
    }
}

void require_backend(CoderId id)
{
    if (is_internal(id))
        throw UsageError("unregistered backend: " + std::string(to_string(id)) + " is an in-repo coder");
    if (!backend_available(id))
        throw BackendUnavailable("backend " + std::string(to_string(id)) + " unavailable: " + backend_status(id));
}

[[noreturn]] void fail(CoderId id, const std::string& what)
{
    throw Error(std::string(to_string(id)) + ": " + what);
}

int option_int(const BackendDescriptor& d, const std::string& key, int fallback)
{
    const auto it = d.options.find(key);
    if (it == d.options.end())
        return fallback;
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw UsageError("backend option " + key + "=" + it->second + " is not an integer");
    }
}

} // namespace

std::optional<int> default_level(CoderId id) noexcept
{
    switch (id) {
    case CoderId::deflate:
        return 9;
    case CoderId::zstd:
        return 19;
    case CoderId::brotli:
        return 10;
    case CoderId::bzip2:
        return 9;
    case CoderId::lzma:
        return 6;
    case CoderId::blosc:
        return 9;
    case CoderId::pcodec:
        return 12;
    default:
        return std::nullopt;
    }
}

int effective_level(const BackendDescriptor& d)
{
    if (d.level)
        return *d.level;
    return default_level(d.id).value_or(0);
}

bool backend_available(CoderId id)
{
    switch (id) {
    case CoderId::deflate:
#ifdef TSC_HAVE_ZLIB
        return true;
#else
        return false;
#endif
    case CoderId::lzma:
#ifdef TSC_HAVE_LZMA
        return true;
#else
        return false;
#endif
    case CoderId::zstd:
        return loaded<Zstd>().ok();
    case CoderId::brotli:
        return loaded<Brotli>().ok();
    case CoderId::bzip2:
        return loaded<Bzip2>().ok();
    case CoderId::lz4:
        return loaded<Lz4>().ok();
    case CoderId::snappy:
        return loaded<Snappy>().ok();
    case CoderId::blosc:
        return loaded<Blosc>().ok();
    default:
        return false;
    }
}

std::string backend_status(CoderId id)
{
    if (is_internal(id))
        return "not a backend";
    if (backend_available(id))
        return "available";
    switch (id) {
    case CoderId::deflate:
        return "built without zlib";
    case CoderId::lzma:
        return "built without liblzma";
    case CoderId::sprintz:
        return "no Sprintz library; chain delta,rle0 with coder bitpack is the in-repo Sprintz-like pipeline";
    case CoderId::pcodec:
        return "no Pcodec library";
    default: {
        const SharedLibrary* lib = library_of(id);
        return lib && !lib->error().empty() ? lib->error() : "library not found";
    }
    }
}

Bytes backend_compress(std::span<const std::uint8_t> data, const BackendDescriptor& d)
{
    require_backend(d.id);
    if (data.empty())
        throw UsageError("backend_compress: empty input");
    const int level = effective_level(d);
    Bytes out;

    switch (d.id) {
    case CoderId::deflate: {
#ifdef TSC_HAVE_ZLIB
        uLongf len = compressBound(static_cast<uLong>(data.size()));
        out.resize(len);
        if (compress2(out.data(), &len, data.data(), static_cast<uLong>(data.size()), level) != Z_OK)
            fail(d.id, "compress2 failed");
        out.resize(len);
#endif
        break;
    }
    case CoderId::lzma: {
#ifdef TSC_HAVE_LZMA
        out.resize(lzma_stream_buffer_bound(data.size()));
        std::size_t pos = 0;
        if (lzma_easy_buffer_encode(static_cast<std::uint32_t>(level), LZMA_CHECK_CRC64, nullptr, data.data(),
                                    data.size(), out.data(), &pos, out.size()) != LZMA_OK)
            fail(d.id, "lzma_easy_buffer_encode failed");
        out.resize(pos);
#endif
        break;
    }
    case CoderId::zstd: {
        auto& z = loaded<Zstd>();
        out.resize(z.compress_bound(data.size()));
        const std::size_t r = z.compress(out.data(), out.size(), data.data(), data.size(), level);
        if (z.is_error(r))
            fail(d.id, "ZSTD_compress failed");
        out.resize(r);
        break;
    }
    case CoderId::brotli: {
        auto& b = loaded<Brotli>();
        std::size_t len = b.max_size(data.size());
        if (len == 0)
            len = data.size() + 1024;
        out.resize(len);
        constexpr int kDefaultWindow = 22;
        constexpr int kModeGeneric = 0;
        if (!b.compress(level, kDefaultWindow, kModeGeneric, data.size(), data.data(), &len, out.data()))
            fail(d.id, "BrotliEncoderCompress failed");
        out.resize(len);
        break;
    }
    case CoderId::bzip2: {
        auto& b = loaded<Bzip2>();
        unsigned len = static_cast<unsigned>(data.size() + data.size() / 100 + 600);
        out.resize(len);
        Bytes src(data.begin(), data.end());
        if (b.compress(reinterpret_cast<char*>(out.data()), &len, reinterpret_cast<char*>(src.data()),
                       static_cast<unsigned>(src.size()), level, 0, 0) != 0)
            fail(d.id, "BZ2_bzBuffToBuffCompress failed");
        out.resize(len);
        break;
    }
    case CoderId::lz4: {
        auto& l = loaded<Lz4>();
        out.resize(static_cast<std::size_t>(l.bound(static_cast<int>(data.size()))));
        const auto* src = reinterpret_cast<const char*>(data.data());
        auto* dst = reinterpret_cast<char*>(out.data());
        const int r = d.level && *d.level > 1
                          ? l.compress_hc(src, dst, static_cast<int>(data.size()), static_cast<int>(out.size()), *d.level)
                          : l.compress(src, dst, static_cast<int>(data.size()), static_cast<int>(out.size()));
        if (r <= 0)
            fail(d.id, "LZ4 compression failed");
        out.resize(static_cast<std::size_t>(r));
        break;
    }
    case CoderId::snappy: {
        auto& s = loaded<Snappy>();
        std::size_t len = s.max_length(data.size());
        out.resize(len);
        if (s.compress(reinterpret_cast<const char*>(data.data()), data.size(), reinterpret_cast<char*>(out.data()),
                       &len) != 0)
            fail(d.id, "snappy_compress failed");
        out.resize(len);
        break;
    }
    case CoderId::blosc: {
        auto& b = loaded<Blosc>();
        constexpr std::size_t kMaxOverhead = 16;
        out.resize(data.size() + kMaxOverhead);
        const int shuffle = option_int(d, "shuffle", 1);
        const int typesize = option_int(d, "typesize", 2);
        const int r = b.compress(level, shuffle, static_cast<std::size_t>(typesize), data.size(), data.data(),
                                 out.data(), out.size(), "blosclz", 0, 1);
        if (r <= 0)
            fail(d.id, "blosc_compress_ctx failed");
        out.resize(static_cast<std::size_t>(r));
        break;
    }
    default:
        throw BackendUnavailable("backend " + std::string(to_string(d.id)) + " unavailable");
    }
    return out;
}

Bytes backend_decompress(std::span<const std::uint8_t> data, const BackendDescriptor& d, std::size_t expected_size)
{
    require_backend(d.id);
    Bytes out(expected_size);
    std::size_t got = 0;

    switch (d.id) {
    case CoderId::deflate: {
#ifdef TSC_HAVE_ZLIB
        uLongf len = static_cast<uLongf>(out.size());
        if (uncompress(out.data(), &len, data.data(), static_cast<uLong>(data.size())) != Z_OK)
            fail(d.id, "corrupt zlib stream");
        got = len;
#endif
        break;
    }
    case CoderId::lzma: {
#ifdef TSC_HAVE_LZMA
        std::uint64_t memlimit = UINT64_MAX;
        std::size_t in_pos = 0;
        std::size_t out_pos = 0;
        if (lzma_stream_buffer_decode(&memlimit, 0, nullptr, data.data(), &in_pos, data.size(), out.data(), &out_pos,
                                      out.size()) != LZMA_OK)
            fail(d.id, "corrupt xz stream");
        got = out_pos;
#endif
        break;
    }
    case CoderId::zstd: {
        auto& z = loaded<Zstd>();
        const std::size_t r = z.decompress(out.data(), out.size(), data.data(), data.size());
        if (z.is_error(r))
            fail(d.id, "corrupt zstd frame");
        got = r;
        break;
    }
    case CoderId::brotli: {
        std::size_t len = out.size();
        if (loaded<Brotli>().decompress(data.size(), data.data(), &len, out.data()) != 1)
            fail(d.id, "corrupt brotli stream");
        got = len;
        break;
    }
    case CoderId::bzip2: {
        unsigned len = static_cast<unsigned>(out.size());
        Bytes src(data.begin(), data.end());
        if (loaded<Bzip2>().decompress(reinterpret_cast<char*>(out.data()), &len, reinterpret_cast<char*>(src.data()),
                                       static_cast<unsigned>(src.size()), 0, 0) != 0)
            fail(d.id, "corrupt bzip2 stream");
        got = len;
        break;
    }
    case CoderId::lz4: {
        const int r = loaded<Lz4>().decompress(reinterpret_cast<const char*>(data.data()),
                                               reinterpret_cast<char*>(out.data()), static_cast<int>(data.size()),
                                               static_cast<int>(out.size()));
        if (r < 0)
            fail(d.id, "corrupt LZ4 block");
        got = static_cast<std::size_t>(r);
        break;
    }
    case CoderId::snappy: {
        std::size_t len = out.size();
        if (loaded<Snappy>().uncompress(reinterpret_cast<const char*>(data.data()), data.size(),
                                        reinterpret_cast<char*>(out.data()), &len) != 0)
            fail(d.id, "corrupt snappy stream");
        got = len;
        break;
    }
    case CoderId::blosc: {
        // the chunk header carries its own lengths; check them against the buffer first
        constexpr std::size_t kBloscHeader = 16;
        std::size_t nbytes = 0, cbytes = 0, blocksize = 0;
        if (data.size() < kBloscHeader)
            fail(d.id, "truncated blosc chunk");
        loaded<Blosc>().sizes(data.data(), &nbytes, &cbytes, &blocksize);
        if (cbytes != data.size() || nbytes != expected_size)
            fail(d.id, "corrupt blosc chunk header");
        const int r = loaded<Blosc>().decompress(data.data(), out.data(), out.size(), 1);
        if (r < 0)
            fail(d.id, "corrupt blosc chunk");
        got = static_cast<std::size_t>(r);
        break;
    }
    default:
        throw BackendUnavailable("backend " + std::string(to_string(d.id)) + " unavailable");
    }
    if (got != expected_size)
        fail(d.id, "decompressed " + std::to_string(got) + " bytes, expected " + std::to_string(expected_size));
    return out;
}

unsigned natural_width(std::span<const std::int32_t> series) noexcept
{
    return fits_int16(series) ? 2u : 4u;
}

Bytes serialize_series(std::span<const std::int32_t> series, unsigned width)
{
    if (width != 2 && width != 4)
        throw UsageError("serialize_series: width must be 2 or 4");
    Bytes out;
    out.reserve(series.size() * width);
    for (const std::int32_t v : series) {
        if (width == 2 && (v < kInt16Min || v > kInt16Max))
            throw Error("serialize_series: sample " + std::to_string(v) + " exceeds 16 bits");
        const auto u = static_cast<std::uint32_t>(v);
        for (unsigned i = 0; i < width; ++i)
            out.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
    }
    return out;
}

Samples deserialize_series(std::span<const std::uint8_t> bytes, unsigned width)
{
    if (width != 2 && width != 4)
        throw Error("deserialize_series: width must be 2 or 4");
    if (bytes.size() % width != 0)
        throw Error("deserialize_series: byte count not a multiple of the width");
    Samples out;
    out.reserve(bytes.size() / width);
    for (std::size_t i = 0; i < bytes.size(); i += width) {
        if (width == 2) {
            const auto u = static_cast<std::uint16_t>(bytes[i] | (bytes[i + 1] << 8));
            out.push_back(static_cast<std::int16_t>(u));
        } else {
            const std::uint32_t u = std::uint32_t{bytes[i]} | (std::uint32_t{bytes[i + 1]} << 8) |
                                    (std::uint32_t{bytes[i + 2]} << 16) | (std::uint32_t{bytes[i + 3]} << 24);
            out.push_back(static_cast<std::int32_t>(u));
        }
    }
    return out;
}

} // namespace tsc
