// Copyright 2026 The clifford-vqd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#![no_main]

use clifford_vqd::parse_pauli;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(p) = parse_pauli(data) {
        // Labels round-trip and every string squares to the identity.
        assert_eq!(parse_pauli(&p.label()).unwrap(), p);
        let sq = p.multiply(&p).unwrap();
        assert!(sq.is_identity() && sq.phase_ipow() == 0);
    }
});
