package cf;

public class Wide {
    public int many() {
        int a0 = 0;
        int a1 = 1;
        int a2 = 2;
        int a3 = 3;
        int a4 = 4;
        int a5 = 5;
        int a6 = 6;
        int a7 = 7;
        int a8 = 8;
        int a9 = 9;
        int a10 = 10;
        int a11 = 11;
        int a12 = 12;
        int a13 = 13;
        int a14 = 14;
        int a15 = 15;
        int a16 = 16;
        int a17 = 17;
        int a18 = 18;
        int a19 = 19;
        int a20 = 20;
        int a21 = 21;
        int a22 = 22;
        int a23 = 23;
        int a24 = 24;
        int a25 = 25;
        int a26 = 26;
        int a27 = 27;
        int a28 = 28;
        int a29 = 29;
        int a30 = 30;
        int a31 = 31;
        int a32 = 32;
        int a33 = 33;
        int a34 = 34;
        int a35 = 35;
        int a36 = 36;
        int a37 = 37;
        int a38 = 38;
        int a39 = 39;
        int a40 = 40;
        int a41 = 41;
        int a42 = 42;
        int a43 = 43;
        int a44 = 44;
        int a45 = 45;
        int a46 = 46;
        int a47 = 47;
        int a48 = 48;
        int a49 = 49;
        int a50 = 50;
        int a51 = 51;
        int a52 = 52;
        int a53 = 53;
        int a54 = 54;
        int a55 = 55;
        int a56 = 56;
        int a57 = 57;
        int a58 = 58;
        int a59 = 59;
        int a60 = 60;
        int a61 = 61;
        int a62 = 62;
        int a63 = 63;
        int a64 = 64;
        int a65 = 65;
        int a66 = 66;
        int a67 = 67;
        int a68 = 68;
        int a69 = 69;
        int a70 = 70;
        int a71 = 71;
        int a72 = 72;
        int a73 = 73;
        int a74 = 74;
        int a75 = 75;
        int a76 = 76;
        int a77 = 77;
        int a78 = 78;
        int a79 = 79;
        int a80 = 80;
        int a81 = 81;
        int a82 = 82;
        int a83 = 83;
        int a84 = 84;
        int a85 = 85;
        int a86 = 86;
        int a87 = 87;
        int a88 = 88;
        int a89 = 89;
        int a90 = 90;
        int a91 = 91;
        int a92 = 92;
        int a93 = 93;
        int a94 = 94;
        int a95 = 95;
        int a96 = 96;
        int a97 = 97;
        int a98 = 98;
        int a99 = 99;
        int a100 = 100;
        int a101 = 101;
        int a102 = 102;
        int a103 = 103;
        int a104 = 104;
        int a105 = 105;
        int a106 = 106;
        int a107 = 107;
        int a108 = 108;
        int a109 = 109;
        int a110 = 110;
        int a111 = 111;
        int a112 = 112;
        int a113 = 113;
        int a114 = 114;
        int a115 = 115;
        int a116 = 116;
        int a117 = 117;
        int a118 = 118;
        int a119 = 119;
        int a120 = 120;
        int a121 = 121;
        int a122 = 122;
        int a123 = 123;
        int a124 = 124;
        int a125 = 125;
        int a126 = 126;
        int a127 = 127;
        int a128 = 128;
        int a129 = 129;
        int a130 = 130;
        int a131 = 131;
        int a132 = 132;
        int a133 = 133;
        int a134 = 134;
        int a135 = 135;
        int a136 = 136;
        int a137 = 137;
        int a138 = 138;
        int a139 = 139;
        int a140 = 140;
        int a141 = 141;
        int a142 = 142;
        int a143 = 143;
        int a144 = 144;
        int a145 = 145;
        int a146 = 146;
        int a147 = 147;
        int a148 = 148;
        int a149 = 149;
        int a150 = 150;
        int a151 = 151;
        int a152 = 152;
        int a153 = 153;
        int a154 = 154;
        int a155 = 155;
        int a156 = 156;
        int a157 = 157;
        int a158 = 158;
        int a159 = 159;
        int a160 = 160;
        int a161 = 161;
        int a162 = 162;
        int a163 = 163;
        int a164 = 164;
        int a165 = 165;
        int a166 = 166;
        int a167 = 167;
        int a168 = 168;
        int a169 = 169;
        int a170 = 170;
        int a171 = 171;
        int a172 = 172;
        int a173 = 173;
        int a174 = 174;
        int a175 = 175;
        int a176 = 176;
        int a177 = 177;
        int a178 = 178;
        int a179 = 179;
        int a180 = 180;
        int a181 = 181;
        int a182 = 182;
        int a183 = 183;
        int a184 = 184;
        int a185 = 185;
        int a186 = 186;
        int a187 = 187;
        int a188 = 188;
        int a189 = 189;
        int a190 = 190;
        int a191 = 191;
        int a192 = 192;
        int a193 = 193;
        int a194 = 194;
        int a195 = 195;
        int a196 = 196;
        int a197 = 197;
        int a198 = 198;
        int a199 = 199;
        int a200 = 200;
        int a201 = 201;
        int a202 = 202;
        int a203 = 203;
        int a204 = 204;
        int a205 = 205;
        int a206 = 206;
        int a207 = 207;
        int a208 = 208;
        int a209 = 209;
        int a210 = 210;
        int a211 = 211;
        int a212 = 212;
        int a213 = 213;
        int a214 = 214;
        int a215 = 215;
        int a216 = 216;
        int a217 = 217;
        int a218 = 218;
        int a219 = 219;
        int a220 = 220;
        int a221 = 221;
        int a222 = 222;
        int a223 = 223;
        int a224 = 224;
        int a225 = 225;
        int a226 = 226;
        int a227 = 227;
        int a228 = 228;
        int a229 = 229;
        int a230 = 230;
        int a231 = 231;
        int a232 = 232;
        int a233 = 233;
        int a234 = 234;
        int a235 = 235;
        int a236 = 236;
        int a237 = 237;
        int a238 = 238;
        int a239 = 239;
        int a240 = 240;
        int a241 = 241;
        int a242 = 242;
        int a243 = 243;
        int a244 = 244;
        int a245 = 245;
        int a246 = 246;
        int a247 = 247;
        int a248 = 248;
        int a249 = 249;
        int a250 = 250;
        int a251 = 251;
        int a252 = 252;
        int a253 = 253;
        int a254 = 254;
        int a255 = 255;
        int a256 = 256;
        int a257 = 257;
        int a258 = 258;
        int a259 = 259;
        int a260 = 260;
        int a261 = 261;
        int a262 = 262;
        int a263 = 263;
        int a264 = 264;
        int a265 = 265;
        int a266 = 266;
        int a267 = 267;
        int a268 = 268;
        int a269 = 269;
        int a270 = 270;
        int a271 = 271;
        int a272 = 272;
        int a273 = 273;
        int a274 = 274;
        int a275 = 275;
        int a276 = 276;
        int a277 = 277;
        int a278 = 278;
        int a279 = 279;
        int a280 = 280;
        int a281 = 281;
        int a282 = 282;
        int a283 = 283;
        int a284 = 284;
        int a285 = 285;
        int a286 = 286;
        int a287 = 287;
        int a288 = 288;
        int a289 = 289;
        int a290 = 290;
        int a291 = 291;
        int a292 = 292;
        int a293 = 293;
        int a294 = 294;
        int a295 = 295;
        int a296 = 296;
        int a297 = 297;
        int a298 = 298;
        int a299 = 299;
        a299 += 2;
        return a299;
    }
}
