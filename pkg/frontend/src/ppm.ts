/** Binary PPM (P6, maxval 255) decoding for canvas display. */

export interface PpmImage {
  width: number;
  height: number;
  /** RGBA byte stream, ready for ImageData. */
  rgba: Uint8ClampedArray<ArrayBuffer>;
}

function isSpace(byte: number): boolean {
  return byte === 0x20 || byte === 0x09 || byte === 0x0a || byte === 0x0d;
}

export function parsePpm(buffer: ArrayBuffer): PpmImage {
  const bytes = new Uint8Array(buffer);
  if (bytes[0] !== 0x50 || bytes[1] !== 0x36) {
    throw new Error("not a P6 PPM payload");
  }
  let pos = 2;
  const fields: number[] = [];
  while (fields.length < 3) {
    while (pos < bytes.length && isSpace(bytes[pos])) pos++;
    if (bytes[pos] === 0x23) {
      // comment runs to end of line
      while (pos < bytes.length && bytes[pos] !== 0x0a) pos++;
      continue;
    }
    let value = 0;
    const start = pos;
    while (pos < bytes.length && !isSpace(bytes[pos])) {
      const digit = bytes[pos] - 0x30;
      if (digit < 0 || digit > 9) throw new Error("bad PPM header");
      value = value * 10 + digit;
      pos++;
    }
    if (pos === start) throw new Error("bad PPM header");
    fields.push(value);
  }
  pos++; // single whitespace after maxval
  const [width, height, maxval] = fields;
  if (maxval !== 255) throw new Error(`unsupported maxval ${maxval}`);
  const need = width * height * 3;
  if (bytes.length - pos < need) throw new Error("truncated PPM raster");

  const rgba = new Uint8ClampedArray(new ArrayBuffer(width * height * 4));
  for (let i = 0; i < width * height; i++) {
    rgba[4 * i] = bytes[pos + 3 * i];
    rgba[4 * i + 1] = bytes[pos + 3 * i + 1];
    rgba[4 * i + 2] = bytes[pos + 3 * i + 2];
    rgba[4 * i + 3] = 255;
  }
  return { width, height, rgba };
}
