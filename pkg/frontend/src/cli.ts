import { parseArgs } from "node:util";
import { CsvError } from "./csv.js";
import { FIGURE_NAMES, renderFigure } from "./figures.js";

const USAGE = `usage: plots <figure-name> --in <dir> --out <dir>

Renders one SVG figure from the CSV artifacts the qillum CLI wrote into
the input directory. Figure names: ${FIGURE_NAMES.join(", ")}.`;

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
      allowPositionals: true,
    });
  } catch (err) {
    console.error(`plots: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  if (parsed.values.help) {
    console.log(USAGE);
    return 0;
  }
  const positionals = parsed.positionals;
  if (positionals.length !== 1) {
    console.error("plots: expected exactly one figure name");
    console.error(USAGE);
    return 2;
  }
  const name = positionals[0];
  if (!FIGURE_NAMES.includes(name)) {
    console.error(
      `plots: unknown figure "${name}"; available: ${FIGURE_NAMES.join(", ")}`
    );
    return 2;
  }
  const inDir = parsed.values.in;
  const outDir = parsed.values.out;
  if (!inDir || !outDir) {
    console.error("plots: both --in and --out are required");
    console.error(USAGE);
    return 2;
  }
  try {
    const outPath = renderFigure(name, inDir, outDir);
    console.log(`wrote ${outPath}`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError || err instanceof Error) {
      console.error(`plots: ${(err as Error).message}`);
      return 1;
    }
    console.error(`plots: ${String(err)}`);
    return 1;
  }
}
