// Canvas painter for the scene graph.

import type { SceneNode } from './scene.js';

const ARROW_SIZE = 46;
const RING_RADIUS = 64;

function drawArrowHead(ctx: CanvasRenderingContext2D, x: number, y: number, direction: string): void {
  const s = ARROW_SIZE;
  ctx.save();
  ctx.translate(x, y);
  const angle = { up: 0, right: Math.PI / 2, down: Math.PI, left: -Math.PI / 2 }[direction] ?? 0;
  ctx.rotate(angle);
  ctx.beginPath();
  ctx.moveTo(0, -s / 2);
  ctx.lineTo(s / 2, s / 2);
  ctx.lineTo(-s / 2, s / 2);
  ctx.closePath();
  ctx.fillStyle = '#444';
  ctx.fill();
  ctx.restore();
}

export function paint(ctx: CanvasRenderingContext2D, nodes: SceneNode[], width: number, height: number): void {
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = '#fafafa';
  ctx.fillRect(0, 0, width, height);

  let bannerRow = 0;
  for (const node of nodes) {
    switch (node.kind) {
      case 'dot':
        ctx.beginPath();
        ctx.arc(node.x, node.y, 18, 0, 2 * Math.PI);
        ctx.fillStyle = node.color === 'red' ? '#d32f2f' : '#2e7d32';
        ctx.fill();
        break;
      case 'arrow':
        drawArrowHead(ctx, node.x, node.y, node.direction);
        break;
      case 'back':
        ctx.font = '32px sans-serif';
        ctx.textAlign = 'center';
        ctx.fillStyle = '#444';
        ctx.fillText('↩ back', node.x, node.y);
        break;
      case 'ring': {
        ctx.beginPath();
        ctx.lineWidth = 10;
        ctx.strokeStyle = node.color === 'red' ? '#d32f2f' : '#9e9e9e';
        const sweep = 2 * Math.PI * node.progress;
        ctx.arc(node.x, node.y, RING_RADIUS, -Math.PI / 2, -Math.PI / 2 + sweep);
        ctx.stroke();
        break;
      }
      case 'icon': {
        ctx.save();
        ctx.globalAlpha = node.alpha;
        ctx.fillStyle = '#1976d2';
        ctx.fillRect(node.x - 32, node.y - 32, 64, 64);
        ctx.fillStyle = '#222';
        ctx.font = '20px sans-serif';
        ctx.textAlign = 'center';
        ctx.fillText(node.label, node.x, node.y + 56);
        ctx.restore();
        break;
      }
      case 'cursor':
        ctx.beginPath();
        ctx.arc(node.x, node.y, 12, 0, 2 * Math.PI);
        ctx.strokeStyle = '#ff9800';
        ctx.lineWidth = 3;
        ctx.stroke();
        break;
      case 'banner':
        ctx.fillStyle = '#b71c1c';
        ctx.font = '28px sans-serif';
        ctx.textAlign = 'left';
        ctx.fillText(node.text, 24, 40 + bannerRow * 36);
        bannerRow += 1;
        break;
    }
  }
}
