import type { KiviatSeriesDoc, ReportDoc } from "./types.js";

export interface ChartSeries {
  label: string;
  values: number[];
}

export interface ChartModel {
  kind: "bar" | "radar";
  axes: string[];
  series: ChartSeries[];
}

/** Display formatting used everywhere a weight or score is shown. */
export function formatValue(x: number): string {
  return x.toFixed(3);
}

function checkLengths(model: ChartModel): ChartModel {
  for (const series of model.series) {
    if (series.values.length !== model.axes.length) {
      throw new Error(
        `series "${series.label}" has ${series.values.length} values for ${model.axes.length} axes`,
      );
    }
  }
  return model;
}

/** Horizontal bars of normalized criterion scores, straight from the report. */
export function reportBarChart(report: ReportDoc): ChartModel {
  return checkLengths({
    kind: "bar",
    axes: report.criteria.map((s) => s.criterion_id),
    series: [{ label: "satisfaction", values: report.criteria.map((s) => s.normalized) }],
  });
}

/**
 * Radar chart over the criteria axes, one series per platform, values taken
 * verbatim from the kiviat endpoint. A single axis cannot span a polygon, so
 * it degenerates to a bar chart.
 */
export function rankingRadarChart(series: KiviatSeriesDoc[], criteria: string[]): ChartModel {
  const model: ChartModel = {
    kind: criteria.length > 1 ? "radar" : "bar",
    axes: [...criteria],
    series: series.map((s) => ({
      label: s.platform,
      values: criteria.map((criterion) => {
        const point = s.values.find((v) => v.criterion === criterion);
        if (!point) throw new Error(`series ${s.platform} is missing axis ${criterion}`);
        return point.weight;
      }),
    })),
  };
  return checkLengths(model);
}

const PALETTE = ["#2563eb", "#db2777", "#059669", "#d97706", "#7c3aed", "#0891b2"];

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

/** Render a chart model as a standalone SVG string. */
export function renderChartSvg(model: ChartModel): string {
  checkLengths(model);
  return model.kind === "radar" ? renderRadarSvg(model) : renderBarSvg(model);
}

function renderBarSvg(model: ChartModel): string {
  const rowHeight = 26;
  const labelWidth = 170;
  const barWidth = 260;
  const blocks: string[] = [];
  let y = 10;
  for (const [axisIndex, axis] of model.axes.entries()) {
    blocks.push(
      `<text x="${labelWidth - 8}" y="${y + 13}" text-anchor="end" class="chart-label">${escapeXml(axis)}</text>`,
    );
    for (const [seriesIndex, series] of model.series.entries()) {
      const value = series.values[axisIndex]!;
      const width = Math.max(1, Math.round(value * barWidth));
      const color = PALETTE[seriesIndex % PALETTE.length]!;
      const barY = y + seriesIndex * (rowHeight - 8);
      blocks.push(
        `<rect x="${labelWidth}" y="${barY}" width="${width}" height="14" fill="${color}"></rect>`,
        `<text x="${labelWidth + width + 6}" y="${barY + 11}" class="chart-value">${formatValue(value)}</text>`,
      );
    }
    y += rowHeight + (model.series.length - 1) * (rowHeight - 8);
  }
  const height = y + 10;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${labelWidth + barWidth + 70} ${height}" ` +
    `role="img" class="chart chart-bar">${blocks.join("")}</svg>`
  );
}

function renderRadarSvg(model: ChartModel): string {
  const size = 360;
  const center = size / 2;
  const radius = size / 2 - 60;
  const n = model.axes.length;
  const angle = (index: number) => (Math.PI * 2 * index) / n - Math.PI / 2;
  const maxValue = Math.max(
    ...model.series.flatMap((s) => s.values),
    1e-9,
  );
  const point = (index: number, value: number) => {
    const r = (value / maxValue) * radius;
    return `${center + r * Math.cos(angle(index))},${center + r * Math.sin(angle(index))}`;
  };

  const blocks: string[] = [];
  for (const ring of [0.25, 0.5, 0.75, 1.0]) {
    const ringPoints = model.axes
      .map((_, index) => point(index, maxValue * ring))
      .join(" ");
    blocks.push(`<polygon points="${ringPoints}" class="chart-ring"></polygon>`);
  }
  for (const [index, axis] of model.axes.entries()) {
    const [x, y] = point(index, maxValue).split(",").map(Number);
    blocks.push(
      `<line x1="${center}" y1="${center}" x2="${x}" y2="${y}" class="chart-spoke"></line>`,
      `<text x="${center + (radius + 24) * Math.cos(angle(index))}" ` +
        `y="${center + (radius + 24) * Math.sin(angle(index))}" text-anchor="middle" ` +
        `class="chart-label">${escapeXml(axis)}</text>`,
    );
  }
  for (const [seriesIndex, series] of model.series.entries()) {
    const color = PALETTE[seriesIndex % PALETTE.length]!;
    const polygon = series.values.map((value, index) => point(index, value)).join(" ");
    blocks.push(
      `<polygon points="${polygon}" fill="${color}22" stroke="${color}" stroke-width="2" ` +
        `data-series="${escapeXml(series.label)}"></polygon>`,
    );
  }
  const legend = model.series
    .map((series, index) => {
      const color = PALETTE[index % PALETTE.length]!;
      return (
        `<span class="legend-item"><span class="legend-swatch" style="background:${color}"></span>` +
        `${escapeXml(series.label)}</span>`
      );
    })
    .join("");
  return (
    `<figure class="chart chart-radar"><svg xmlns="http://www.w3.org/2000/svg" ` +
    `viewBox="0 0 ${size} ${size}" role="img">${blocks.join("")}</svg>` +
    `<figcaption>${legend}</figcaption></figure>`
  );
}
