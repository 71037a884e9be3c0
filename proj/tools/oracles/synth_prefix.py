# Copyright 2026 The tscomp Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# you may obtain a copy of the License at
#
#                 http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

# Independent model of std::seed_seq + std::mt19937_64 + rejection-sampled bounded ints.
M32 = 0xFFFFFFFF
def seed_seq_generate(v, n):
    b = [0x8b8b8b8b] * n
    s = len(v)
    t = 11 if n >= 623 else 7 if n >= 68 else 5 if n >= 39 else 3 if n >= 7 else (n - 1) // 2
    p = (n - t) // 2
    q = p + t
    m = max(s + 1, n)
    T = lambda x: (x ^ (x >> 27)) & M32
    for k in range(m):
        r1 = (1664525 * T(b[k % n] ^ b[(k + p) % n] ^ b[(k - 1) % n])) & M32
        r2 = (r1 + (s if k == 0 else (k % n) + v[k - 1] if k <= s else k % n)) & M32
        b[(k + p) % n] = (b[(k + p) % n] + r1) & M32
        b[(k + q) % n] = (b[(k + q) % n] + r2) & M32
        b[k % n] = r2
    for k in range(m, m + n):
        r3 = (1566083941 * T((b[k % n] + b[(k + p) % n] + b[(k - 1) % n]) & M32)) & M32
        r4 = (r3 - (k % n)) & M32
        b[(k + p) % n] ^= r3
        b[(k + q) % n] ^= r4
        b[k % n] = r4
    return b

class MT64:
    N, M = 312, 156
    def __init__(self, seq):
        w = seed_seq_generate(seq, 2 * self.N)
        M64 = (1 << 64) - 1
        self.x = [(w[2 * i] | (w[2 * i + 1] << 32)) & M64 for i in range(self.N)]
        # degenerate-state fix per the standard
        if (self.x[0] >> 31) == 0 and all(v == 0 for v in self.x[1:]):
            self.x[0] = 1 << 63
        self.i = self.N
    def twist(self):
        N, M = self.N, self.M
        UM, LM = 0xFFFFFFFF80000000, 0x7FFFFFFF
        A = 0xB5026F5AA96619E9
        x = self.x
        for k in range(N):
            y = (x[k] & UM) | (x[(k + 1) % N] & LM)
            x[k] = x[(k + M) % N] ^ (y >> 1) ^ (A if y & 1 else 0)
        self.i = 0
    def __call__(self):
        if self.i >= self.N:
            self.twist()
        y = self.x[self.i]; self.i += 1
        M64 = (1 << 64) - 1
        y ^= (y >> 29) & 0x5555555555555555
        y ^= (y << 17) & 0x71D67FFFEDA60000
        y ^= (y << 37) & 0xFFF7EEE000000000
        y ^= y >> 43
        return y & M64

def uniform(rng, lo, hi):
    span = hi - lo + 1
    mx = (1 << 64) - 1
    limit = mx - mx % span
    while True:
        r = rng()
        if r < limit:
            return lo + r % span



noise = MT64([0, 0, 1, 1])  # seed 0, case noise=1, stream 1
print("noise", [uniform(noise, -98, 98) for _ in range(8)])
levels = [-700, -200, 0, 300, 800]; dw = [5, 7, 8]
rng = MT64([0, 0, 3, 3])
out = []
lvl = uniform(rng, 0, 4)
while len(out) < 16:
    d = dw[uniform(rng, 0, 2)]
    out += [levels[lvl]] * d
    lvl = (lvl + 1 + uniform(rng, 0, 3)) % 5
print("switching", out[:16])
